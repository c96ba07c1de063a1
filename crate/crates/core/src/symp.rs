//! Symplectic forms on invariant complexes.
//!
//! A form `ω = Σ_{i<j} ω_ij x_i x_j` lives on a DGA whose generators are
//! all of degree 1. With `π = (ω_ij)⁻¹` the pairing of basis forms is
//! `⟨x_I, x_J⟩ = det π[I, J]`, the volume form is `ω^n / n!`, and `∗` is
//! the solution of `α ∧ ∗β = ⟨α, β⟩ vol` for every basis `α`. The
//! codifferential is `δ = ∗ d ∗`.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::cohom::{class_basis, CohomClass};
use crate::dga::Dga;
use crate::error::{Error, Result};
use crate::grade::{Element, Monomial};
use crate::models::{abelian, cpn, kodaira_thurston, vn_model};
use crate::qlin::{kernel_basis, rank, solve_any, QMatrix, QVector, Rational, Subspace};

/// A finite complex with a symplectic star in every degree `0..=2n`.
pub trait SymplecticComplex {
    fn half_dim(&self) -> u32;

    fn slice_dim(&self, q: u32) -> usize;

    /// `d` from degree `q` to degree `q + 1`.
    fn d_mat(&self, q: u32) -> Result<QMatrix>;

    /// `∗` from degree `q` to degree `2n − q`.
    fn star_mat(&self, q: u32) -> Result<QMatrix>;

    /// `δ = ∗ d ∗` from degree `q` to degree `q − 1`.
    fn codiff_mat(&self, q: u32) -> Result<QMatrix> {
        let n2 = 2 * self.half_dim();
        if q == 0 {
            return Ok(QMatrix::zeros(0, self.slice_dim(0)));
        }
        let s = self.star_mat(q)?;
        let d = self.d_mat(n2 - q)?;
        let t = self.star_mat(n2 - q + 1)?;
        Ok(t.mul(&d.mul(&s)))
    }
}

#[derive(Clone, Debug)]
pub struct SymplecticForm {
    dga: Dga,
    element: Element,
    matrix: QMatrix,
    closed: bool,
    nondegenerate: bool,
    inverse: Option<QMatrix>,
    stars: Arc<Vec<OnceLock<QMatrix>>>,
}

impl SymplecticForm {
    /// Wraps a degree-2 element of a DGA generated in degree 1.
    pub fn new(dga: &Dga, element: Element) -> Result<Self> {
        let alg = dga.algebra();
        let n = alg.len();
        if alg.generators().iter().any(|g| g.degree != 1) {
            return Err(Error::NotAForm("all generators must have degree 1".into()));
        }
        if n % 2 == 1 || n == 0 {
            return Err(Error::NotAForm(format!("{n} generators is not an even dimension")));
        }
        if !element.is_homogeneous_of(2) {
            return Err(Error::NotHomogeneous { expected: 2 });
        }
        let dga = dga.with_cap(n as u32);
        let element = element.embed(dga.algebra())?;
        let mut matrix = QMatrix::zeros(n, n);
        for (m, c) in element.terms() {
            let f = m.factors();
            let (i, j) = (f[0], f[1]);
            matrix.set(i, j, c.clone());
            matrix.set(j, i, -c.clone());
        }
        let closed = dga.differential(&element).is_zero();
        let inverse = matrix.inverse();
        Ok(SymplecticForm {
            stars: Arc::new((0..=n).map(|_| OnceLock::new()).collect()),
            dga,
            element,
            matrix,
            closed,
            nondegenerate: inverse.is_some(),
            inverse,
        })
    }

    pub fn parse(dga: &Dga, text: &str) -> Result<Self> {
        SymplecticForm::new(dga, dga.parse(text)?)
    }

    pub fn dga(&self) -> &Dga {
        &self.dga
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    /// The antisymmetric coefficient matrix `ω_ij`.
    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn is_integral(&self) -> bool {
        self.element.terms().all(|(_, c)| c.is_integer())
    }

    /// `ω^n`.
    pub fn top_power(&self) -> Element {
        self.element.pow(self.half_dim())
    }

    pub fn class(&self) -> Result<CohomClass> {
        if !self.closed {
            return Err(Error::NotClosed);
        }
        Ok(CohomClass {
            degree: 2,
            representative: self.element.clone(),
        })
    }

    fn inverse(&self) -> Result<&QMatrix> {
        self.inverse.as_ref().ok_or(Error::DegenerateForm)
    }

    /// `⟨x_I, x_J⟩` for basis monomials of equal degree.
    fn pairing(&self, a: &Monomial, b: &Monomial) -> Result<Rational> {
        let pi = self.inverse()?;
        let (ia, ib) = (a.factors(), b.factors());
        let k = ia.len();
        let mut sub = QMatrix::zeros(k, k);
        for (r, &i) in ia.iter().enumerate() {
            for (c, &j) in ib.iter().enumerate() {
                sub.set(r, c, pi.get(i, j).clone());
            }
        }
        Ok(sub.determinant())
    }

    fn volume_coefficient(&self) -> Rational {
        let n = self.half_dim();
        let fact: BigInt = (1..=n).map(BigInt::from).product();
        let top = self.dga.coords(&self.top_power(), 2 * n).expect("top degree");
        top[0].clone() / Rational::from_integer(fact)
    }

    fn compute_star(&self, q: u32) -> Result<QMatrix> {
        let n2 = 2 * self.half_dim();
        let src = self.dga.slice_basis(q)?;
        let dst = self.dga.slice_basis(n2 - q)?;
        let alg = self.dga.algebra();
        // wedge[I][J]: coefficient of the top monomial in x_I ∧ x_J
        let mut wedge = QMatrix::zeros(src.len(), dst.len());
        for (r, a) in src.iter().enumerate() {
            for (c, b) in dst.iter().enumerate() {
                if let Some((neg, _)) = a.multiply(b, alg) {
                    wedge.set(r, c, if neg { -Rational::one() } else { Rational::one() });
                }
            }
        }
        let vol = self.volume_coefficient();
        let mut columns = Vec::with_capacity(src.len());
        for b in src {
            let rhs: Vec<Rational> = src
                .iter()
                .map(|a| Ok(self.pairing(a, b)? * &vol))
                .collect::<Result<_>>()?;
            let col = solve_any(&wedge, &rhs).expect("wedge pairing is perfect");
            columns.push(col);
        }
        Ok(QMatrix::from_columns(dst.len(), &columns))
    }

    fn star_cached(&self, q: u32) -> Result<&QMatrix> {
        self.inverse()?;
        if let Some(m) = self.stars[q as usize].get() {
            return Ok(m);
        }
        let m = self.compute_star(q)?;
        Ok(self.stars[q as usize].get_or_init(|| m))
    }

    fn degree_of(&self, u: &Element) -> Result<u32> {
        if u.is_zero() {
            return Ok(0);
        }
        u.degree().ok_or(Error::NotHomogeneous { expected: 0 })
    }
}

impl SymplecticComplex for SymplecticForm {
    fn half_dim(&self) -> u32 {
        self.dga.algebra().len() as u32 / 2
    }

    fn slice_dim(&self, q: u32) -> usize {
        self.dga.slice_dim(q).expect("within the top degree")
    }

    fn d_mat(&self, q: u32) -> Result<QMatrix> {
        Ok(self.dga.d_matrix(q)?.clone())
    }

    fn star_mat(&self, q: u32) -> Result<QMatrix> {
        Ok(self.star_cached(q)?.clone())
    }
}

/// The standard form `Ω_{2m} = Σ_{i=1}^{m} (2m − 2i + 1) x_i x_{2m+1−i}` on
/// the model of `M(2m)`.
pub fn omega_standard(m: usize) -> Result<SymplecticForm> {
    if m < 2 {
        return Err(Error::BadParameter("omega_standard requires m >= 2".into()));
    }
    let dga = vn_model(2 * m)?;
    let text = (1..=m)
        .map(|i| format!("{}*x{}*x{}", 2 * m - 2 * i + 1, i, 2 * m + 1 - i))
        .collect::<Vec<_>>()
        .join(" + ");
    SymplecticForm::parse(&dga, &text)
}

/// `x1 x4 + x2 x3` on the Kodaira–Thurston model.
pub fn kodaira_thurston_form() -> SymplecticForm {
    SymplecticForm::parse(&kodaira_thurston(), "x1*x4 + x2*x3").expect("valid form")
}

fn check_form(f: &SymplecticForm, u: &Element) -> Result<u32> {
    f.inverse()?;
    let u = u.embed(f.dga.algebra())?;
    let q = f.degree_of(&u)?;
    let top = 2 * f.half_dim();
    if q > top {
        return Err(Error::CapExceeded { degree: q, cap: top });
    }
    Ok(q)
}

/// `∗u` for a homogeneous `u`.
pub fn symplectic_star(f: &SymplecticForm, u: &Element) -> Result<Element> {
    let q = check_form(f, u)?;
    let u = u.embed(f.dga.algebra())?;
    let v = f.dga.coords(&u, q)?;
    let out = f.star_cached(q)?.mul_vec(&v);
    f.dga.element(2 * f.half_dim() - q, &out)
}

/// `δu = ∗d∗u`.
pub fn codifferential(f: &SymplecticForm, u: &Element) -> Result<Element> {
    let q = check_form(f, u)?;
    if q == 0 {
        return Ok(Element::zero(f.dga.algebra()));
    }
    let u = u.embed(f.dga.algebra())?;
    let v = f.dga.coords(&u, q)?;
    f.dga.element(q - 1, &f.codiff_mat(q)?.mul_vec(&v))
}

/// `du = 0` and `δu = 0`.
pub fn is_harmonic(f: &SymplecticForm, u: &Element) -> Result<bool> {
    let du = f.dga.differential(&u.embed(f.dga.algebra())?);
    Ok(du.is_zero() && codifferential(f, u)?.is_zero())
}

#[derive(Clone, Debug)]
pub struct HarmonicWitness {
    pub representable: bool,
    /// `a + dγ` with `δ(a + dγ) = 0`, when one exists.
    pub witness: Option<Element>,
}

/// Looks for `γ` with `δ(a + dγ) = 0`.
pub fn class_has_harmonic_rep(f: &SymplecticForm, a: &CohomClass) -> Result<HarmonicWitness> {
    check_form(f, &a.representative)?;
    let rep = a.representative.embed(f.dga.algebra())?;
    if !f.dga.differential(&rep).is_zero() {
        return Err(Error::NotClosed);
    }
    let q = a.degree;
    let v = f.dga.coords(&rep, q)?;
    if q == 0 {
        return Ok(HarmonicWitness {
            representable: true,
            witness: Some(rep),
        });
    }
    let delta = f.codiff_mat(q)?;
    let d = f.d_mat(q - 1)?;
    let rhs: QVector = delta.mul_vec(&v).into_iter().map(|x| -x).collect();
    Ok(match solve_any(&delta.mul(&d), &rhs) {
        Some(gamma) => {
            let w: QVector = v
                .iter()
                .zip(d.mul_vec(&gamma))
                .map(|(x, y)| x + y)
                .collect();
            HarmonicWitness {
                representable: true,
                witness: Some(f.dga.element(q, &w)?),
            }
        }
        None => HarmonicWitness {
            representable: false,
            witness: None,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarmonicDegree {
    pub degree: u32,
    /// Dimension of the classes with a harmonic representative.
    pub representable: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarmonicReport {
    pub degrees: Vec<HarmonicDegree>,
    pub all_representable: bool,
}

fn stack(top: &QMatrix, bottom: &QMatrix) -> QMatrix {
    let rows = (0..top.rows())
        .map(|i| top.row(i).to_vec())
        .chain((0..bottom.rows()).map(|i| bottom.row(i).to_vec()))
        .collect();
    QMatrix::from_rows(top.cols(), rows)
}

/// Per degree, `dim((Z ∩ ker δ) + B) − dim B` against `dim Z − dim B`.
pub fn harmonic_report(c: &impl SymplecticComplex) -> Result<HarmonicReport> {
    let mut degrees = Vec::new();
    for q in 0..=2 * c.half_dim() {
        let d = c.d_mat(q)?;
        let boundaries = if q == 0 {
            Subspace::zero(c.slice_dim(0))
        } else {
            let m = c.d_mat(q - 1)?;
            Subspace::span(m.rows(), (0..m.cols()).map(|j| m.column(j)))
        };
        let cocycles = kernel_basis(&d);
        let harmonic = kernel_basis(&stack(&d, &c.codiff_mat(q)?));
        let representable = harmonic.join(&boundaries).dim() - boundaries.dim();
        degrees.push(HarmonicDegree {
            degree: q,
            representable,
            total: cocycles.dim() - boundaries.dim(),
        });
    }
    let all_representable = degrees.iter().all(|d| d.representable == d.total);
    Ok(HarmonicReport {
        degrees,
        all_representable,
    })
}

/// Formal model of `ℂP^m`: `ℚ[x]/x^{m+1}` with `d = 0`, `ω = x` and
/// `∗x^r = r!/(m−r)! · x^{m−r}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormalCpn {
    pub m: u32,
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

impl SymplecticComplex for FormalCpn {
    fn half_dim(&self) -> u32 {
        self.m
    }

    fn slice_dim(&self, q: u32) -> usize {
        usize::from(q % 2 == 0 && q <= 2 * self.m)
    }

    fn d_mat(&self, q: u32) -> Result<QMatrix> {
        Ok(QMatrix::zeros(self.slice_dim(q + 1), self.slice_dim(q)))
    }

    fn star_mat(&self, q: u32) -> Result<QMatrix> {
        let mut s = QMatrix::zeros(self.slice_dim(2 * self.m - q), self.slice_dim(q));
        if self.slice_dim(q) == 1 {
            let r = q / 2;
            s.set(0, 0, Rational::new(factorial(r), factorial(self.m - r)));
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzLevel {
    pub k: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzReport {
    pub levels: Vec<LefschetzLevel>,
    pub passes: bool,
}

/// Rank of `∪[w]^k : H^{n−k} → H^{n+k}` for `k = 0..=n`.
pub fn hard_lefschetz(dga: &Dga, w: &CohomClass, n: u32) -> Result<LefschetzReport> {
    if w.degree != 2 {
        return Err(Error::NotHomogeneous { expected: 2 });
    }
    let rep = w.representative.embed(dga.algebra())?;
    dga.coords(&rep, 2)?;
    if !dga.differential(&rep).is_zero() {
        return Err(Error::NotClosed);
    }
    if 2 * n > dga.degree_cap() {
        return Err(Error::CapExceeded {
            degree: 2 * n,
            cap: dga.degree_cap(),
        });
    }
    let mut levels = Vec::new();
    for k in 0..=n {
        let lk = rep.pow(k);
        let source = class_basis(dga, n - k)?;
        let target = dga.cohomology(n + k)?;
        let columns: Vec<QVector> = source
            .iter()
            .map(|a| {
                let prod = &a.representative * &lk;
                Ok(target.class_coordinates(&dga.coords(&prod, n + k)?))
            })
            .collect::<Result<_>>()?;
        let rank = rank(&QMatrix::from_columns(target.betti(), &columns));
        levels.push(LefschetzLevel {
            k,
            source_dim: source.len(),
            target_dim: target.betti(),
            rank,
            iso: rank == source.len() && rank == target.betti(),
        });
    }
    let passes = levels.iter().all(|l| l.iso);
    Ok(LefschetzReport { levels, passes })
}

/// The pair (Hard Lefschetz holds, every class has a harmonic representative).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MathieuEvidence {
    pub lefschetz: bool,
    pub harmonic: bool,
}

impl MathieuEvidence {
    pub fn agrees(&self) -> bool {
        self.lefschetz == self.harmonic
    }
}

pub fn mathieu_evidence(f: &SymplecticForm) -> Result<MathieuEvidence> {
    let l = hard_lefschetz(&f.dga, &f.class()?, f.half_dim())?;
    let h = harmonic_report(f)?;
    Ok(MathieuEvidence {
        lefschetz: l.passes,
        harmonic: h.all_representable,
    })
}

/// Evidence for `ℂP^m` with `[x]`, harmonicity read off [`FormalCpn`].
pub fn mathieu_evidence_cpn(m: usize) -> Result<MathieuEvidence> {
    let dga = cpn(m)?;
    let x = CohomClass {
        degree: 2,
        representative: dga.parse("x")?,
    };
    let l = hard_lefschetz(&dga, &x, m as u32)?;
    let h = harmonic_report(&FormalCpn { m: m as u32 })?;
    Ok(MathieuEvidence {
        lefschetz: l.passes,
        harmonic: h.all_representable,
    })
}

/// JSON shape of the `symplectic` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticReport {
    pub form: String,
    pub closed: bool,
    pub nondegenerate: bool,
    pub integral: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lefschetz: Option<LefschetzReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub harmonic_classes: Option<HarmonicReport>,
}

pub fn symplectic_report(f: &SymplecticForm, lefschetz: bool, harmonic: bool) -> Result<SymplecticReport> {
    let usable = f.closed && f.nondegenerate;
    Ok(SymplecticReport {
        form: f.element.to_string(),
        closed: f.closed,
        nondegenerate: f.nondegenerate,
        integral: f.is_integral(),
        lefschetz: if lefschetz && usable {
            Some(hard_lefschetz(&f.dga, &f.class()?, f.half_dim())?)
        } else {
            None
        },
        harmonic_classes: if harmonic && usable { Some(harmonic_report(f)?) } else { None },
    })
}

/// `ω_0 = Σ x_{2i−1} x_{2i}` on the torus model of dimension `2n`.
pub fn torus_form(n: usize) -> SymplecticForm {
    let dga = abelian(2 * n);
    let text = (1..=n)
        .map(|i| format!("x{}*x{}", 2 * i - 1, 2 * i))
        .collect::<Vec<_>>()
        .join(" + ");
    SymplecticForm::parse(&dga, &text).expect("valid form")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn basis_elements(f: &SymplecticForm, q: u32) -> Vec<Element> {
        let alg = f.dga().algebra().clone();
        f.dga()
            .slice_basis(q)
            .unwrap()
            .iter()
            .map(|m| Element::monomial(&alg, m.clone(), Rational::one()))
            .collect()
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_standard(2).unwrap().element().to_string(), "3*x1*x4 + x2*x3");
        assert_eq!(
            omega_standard(3).unwrap().element().to_string(),
            "5*x1*x6 + 3*x2*x5 + x3*x4"
        );
        for m in 2..=5 {
            let f = omega_standard(m).unwrap();
            assert!(f.is_closed() && f.is_nondegenerate() && f.is_integral(), "m = {m}");
            assert!(!f.top_power().is_zero());
        }
    }

    #[test]
    fn kt_form() {
        let f = kodaira_thurston_form();
        assert!(f.is_closed() && f.is_nondegenerate());
        assert!(!f.matrix().determinant().is_zero());
        assert!(!f.top_power().is_zero());
    }

    #[test]
    fn degenerate_and_invalid_forms() {
        let t = abelian(4);
        let f = SymplecticForm::parse(&t, "x1*x2").unwrap();
        assert!(!f.is_nondegenerate());
        let one = Element::one(f.dga().algebra());
        assert_eq!(symplectic_star(&f, &one), Err(Error::DegenerateForm));
        assert!(matches!(
            SymplecticForm::parse(&abelian(3), "x1*x2"),
            Err(Error::NotAForm(_))
        ));
        assert!(matches!(
            SymplecticForm::parse(&t, "x1"),
            Err(Error::NotHomogeneous { .. })
        ));
    }

    #[test]
    fn star_of_one_is_volume() {
        for f in [torus_form(2), kodaira_thurston_form(), omega_standard(2).unwrap()] {
            let one = Element::one(f.dga().algebra());
            let vol = f.top_power().scale(&Rational::new(1.into(), 2.into()));
            assert_eq!(symplectic_star(&f, &one).unwrap(), vol);
        }
    }

    #[test]
    fn star_involution_and_delta_squared() {
        for f in [torus_form(2), torus_form(3), kodaira_thurston_form(), omega_standard(3).unwrap()] {
            let n2 = 2 * f.half_dim();
            for q in 0..=n2 {
                for u in basis_elements(&f, q) {
                    let s = symplectic_star(&f, &u).unwrap();
                    assert_eq!(s.degree().unwrap_or(n2 - q), n2 - q);
                    assert_eq!(symplectic_star(&f, &s).unwrap(), u, "star star {u}");
                    let du = codifferential(&f, &u).unwrap();
                    assert!(codifferential(&f, &du).unwrap().is_zero(), "delta^2 {u}");
                }
            }
        }
    }

    #[test]
    fn pairing_is_skew_on_one_forms() {
        let f = omega_standard(2).unwrap();
        for a in f.dga().slice_basis(1).unwrap() {
            assert!(f.pairing(a, a).unwrap().is_zero());
        }
    }

    #[test]
    fn torus_is_harmonic() {
        let f = torus_form(2);
        let r = harmonic_report(&f).unwrap();
        assert!(r.all_representable);
        for a in class_basis(f.dga(), 2).unwrap() {
            let w = class_has_harmonic_rep(&f, &a).unwrap();
            assert!(w.representable);
            assert!(is_harmonic(&f, &w.witness.unwrap()).unwrap());
        }
    }

    #[test]
    fn kodaira_thurston_fails_both() {
        let f = kodaira_thurston_form();
        let l = hard_lefschetz(f.dga(), &f.class().unwrap(), 2).unwrap();
        assert!(!l.passes);
        let k1 = &l.levels[1];
        assert_eq!((k1.source_dim, k1.target_dim), (3, 3));
        assert!(k1.rank < 3);
        let e = mathieu_evidence(&f).unwrap();
        assert_eq!(e, MathieuEvidence { lefschetz: false, harmonic: false });
    }

    #[test]
    fn cpn_passes_both() {
        for m in 1..=3 {
            let e = mathieu_evidence_cpn(m).unwrap();
            assert_eq!(e, MathieuEvidence { lefschetz: true, harmonic: true });
        }
        let c = FormalCpn { m: 3 };
        for q in 0..=6 {
            let s = c.star_mat(q).unwrap();
            let ss = c.star_mat(6 - q).unwrap().mul(&s);
            assert_eq!(ss, QMatrix::identity(c.slice_dim(q)));
        }
    }

    #[test]
    fn witness_is_harmonic_and_cohomologous() {
        let f = omega_standard(2).unwrap();
        for q in 0..=4 {
            for a in class_basis(f.dga(), q).unwrap() {
                let w = class_has_harmonic_rep(&f, &a).unwrap();
                if let Some(h) = w.witness {
                    assert!(is_harmonic(&f, &h).unwrap());
                    let diff = &h - &a.representative;
                    assert!(crate::cohom::is_exact(f.dga(), &diff).unwrap());
                }
            }
        }
    }
}
