//! Differential graded algebras given by the differential on generators.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cohom::CohomologySpace;
use crate::error::{Error, Result};
use crate::grade::{coords_with, Element, GeneratorSpec, GradedAlgebra, Monomial};
use crate::parse::parse_element;
use crate::qlin::{QMatrix, QVector, Rational};

pub(crate) struct Slice {
    pub(crate) basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

/// A free graded-commutative algebra with a degree +1 differential.
///
/// Construction checks that every `d(g)` is homogeneous of degree
/// `deg g + 1` and that `d(d(g)) = 0`; since `d²` is a derivation this makes
/// `d² = 0` everywhere. Per-degree bases, matrices and cohomology are built
/// lazily and memoized.
pub struct Dga {
    alg: Arc<GradedAlgebra>,
    d_gen: Vec<Element>,
    cap: u32,
    slices: Vec<OnceLock<Slice>>,
    dmats: Vec<OnceLock<QMatrix>>,
    pub(crate) cohom: Vec<OnceLock<CohomologySpace>>,
}

impl Clone for Dga {
    fn clone(&self) -> Self {
        Dga::assemble(self.alg.clone(), self.d_gen.clone(), self.cap)
    }
}

impl PartialEq for Dga {
    fn eq(&self, other: &Self) -> bool {
        *self.alg == *other.alg && self.cap == other.cap && self.d_gen == other.d_gen
    }
}

impl Eq for Dga {}

impl std::fmt::Debug for Dga {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut s = f.debug_struct("Dga");
        for (g, d) in self.alg.generators().iter().zip(&self.d_gen) {
            s.field(&format!("d{}", g.name), &d.to_string());
        }
        s.field("degree_cap", &self.cap).finish()
    }
}

/// Outcome of [`Dga::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub d_squared_zero: bool,
    pub minimal: bool,
    /// `Some(true)` when all generators are weighted and `d` preserves weight.
    pub weight_preserving: Option<bool>,
}

impl Dga {
    /// Builds and validates a DGA. Generators missing from `differential`
    /// are closed. `cap` defaults to the top exterior degree when there are
    /// no even generators and is required otherwise.
    pub fn new(
        alg: Arc<GradedAlgebra>,
        differential: Vec<(String, Element)>,
        cap: Option<u32>,
    ) -> Result<Dga> {
        let mut d_gen: Vec<Element> = (0..alg.len()).map(|_| Element::zero(&alg)).collect();
        for (name, image) in differential {
            let i = alg
                .index_of(&name)
                .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            let image = if image.algebra().as_ref() == alg.as_ref() {
                image
            } else {
                image.embed(&alg)?
            };
            d_gen[i] = image;
        }
        let cap = match cap {
            Some(c) => c,
            None if alg.has_even_generators() => return Err(Error::MissingDegreeCap),
            None => alg.top_exterior_degree(),
        };
        for (g, d) in alg.generators().iter().zip(&d_gen) {
            if !d.is_homogeneous_of(g.degree + 1) {
                return Err(Error::WrongDifferentialDegree {
                    generator: g.name.clone(),
                    expected: g.degree + 1,
                });
            }
        }
        let dga = Dga::assemble(alg, d_gen, cap);
        if let Some(generator) = dga.d_squared_failure() {
            return Err(Error::NotADifferential { generator });
        }
        Ok(dga)
    }

    /// Convenience constructor from generator specs and textual differentials.
    pub fn from_text(
        gens: Vec<GeneratorSpec>,
        differential: &[(&str, &str)],
        cap: Option<u32>,
    ) -> Result<Dga> {
        let alg = Arc::new(GradedAlgebra::new(gens)?);
        let d = differential
            .iter()
            .map(|(g, e)| Ok((g.to_string(), parse_element(e, &alg)?)))
            .collect::<Result<Vec<_>>>()?;
        Dga::new(alg, d, cap)
    }

    fn assemble(alg: Arc<GradedAlgebra>, d_gen: Vec<Element>, cap: u32) -> Dga {
        let n = cap as usize + 2;
        Dga {
            alg,
            d_gen,
            cap,
            slices: (0..n).map(|_| OnceLock::new()).collect(),
            dmats: (0..n).map(|_| OnceLock::new()).collect(),
            cohom: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    /// The same DGA with a different degree cap.
    pub fn with_cap(&self, cap: u32) -> Dga {
        Dga::assemble(self.alg.clone(), self.d_gen.clone(), cap)
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.alg
    }

    pub fn degree_cap(&self) -> u32 {
        self.cap
    }

    /// `d` of the `i`-th generator.
    pub fn d_generator(&self, i: usize) -> &Element {
        &self.d_gen[i]
    }

    pub fn generator(&self, name: &str) -> Result<Element> {
        Element::generator(&self.alg, name)
    }

    pub fn parse(&self, text: &str) -> Result<Element> {
        parse_element(text, &self.alg)
    }

    fn d_squared_failure(&self) -> Option<String> {
        self.d_gen
            .iter()
            .zip(self.alg.generators())
            .find(|(d, _)| !self.differential(d).is_zero())
            .map(|(_, g)| g.name.clone())
    }

    /// Leibniz extension of the generator differential.
    pub fn differential(&self, u: &Element) -> Element {
        assert!(**u.algebra() == *self.alg, "element of another algebra");
        let mut out = Element::zero(&self.alg);
        for (m, c) in u.terms() {
            out = &out + &self.d_monomial(m).scale(c);
        }
        out
    }

    fn d_monomial(&self, m: &Monomial) -> Element {
        let factors = m.factors();
        let mut out = Element::zero(&self.alg);
        let n = self.alg.len();
        let gen = |i: usize| Element::monomial(&self.alg, Monomial::generator(n, i), Rational::one());
        let mut prefix = Element::one(&self.alg);
        let mut prefix_degree = 0u32;
        for (pos, &i) in factors.iter().enumerate() {
            if !self.d_gen[i].is_zero() {
                let mut term = &prefix * &self.d_gen[i];
                for &j in &factors[pos + 1..] {
                    term = &term * &gen(j);
                }
                out = if prefix_degree % 2 == 0 { &out + &term } else { &out - &term };
            }
            prefix = &prefix * &gen(i);
            prefix_degree += self.alg.generators()[i].degree;
        }
        out
    }

    fn check_cap(&self, q: u32) -> Result<()> {
        if q > self.cap {
            Err(Error::CapExceeded {
                degree: q,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn slice(&self, q: u32) -> Result<&Slice> {
        if q > self.cap + 1 {
            return Err(Error::CapExceeded {
                degree: q,
                cap: self.cap,
            });
        }
        Ok(self.slices[q as usize].get_or_init(|| {
            let basis = self.alg.degree_basis(q);
            let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            Slice { basis, index }
        }))
    }

    /// Monomial basis of degree `q`, in canonical order.
    pub fn slice_basis(&self, q: u32) -> Result<&[Monomial]> {
        Ok(&self.slice(q)?.basis)
    }

    pub fn slice_dim(&self, q: u32) -> Result<usize> {
        Ok(self.slice(q)?.basis.len())
    }

    /// Coordinates of a degree-`q` element in the slice basis.
    pub fn coords(&self, u: &Element, q: u32) -> Result<QVector> {
        if **u.algebra() != *self.alg {
            return Err(Error::MismatchedAlgebra);
        }
        let s = self.slice(q)?;
        coords_with(u, q, s.basis.len(), |m| s.index.get(m).copied())
    }

    pub fn element(&self, q: u32, coords: &[Rational]) -> Result<Element> {
        let s = self.slice(q)?;
        assert_eq!(coords.len(), s.basis.len(), "coordinate vector has wrong length");
        Ok(Element::from_terms(
            &self.alg,
            s.basis.iter().cloned().zip(coords.iter().cloned()),
        ))
    }

    /// Matrix of `d` from degree `q` to degree `q + 1` (columns indexed by
    /// the degree-`q` basis). Requires `q <= degree_cap`.
    pub fn d_matrix(&self, q: u32) -> Result<&QMatrix> {
        self.check_cap(q)?;
        if let Some(m) = self.dmats[q as usize].get() {
            return Ok(m);
        }
        let src = self.slice(q)?;
        let dst = self.slice(q + 1)?;
        let columns: Vec<QVector> = src
            .basis
            .iter()
            .map(|m| {
                let dm = self.d_monomial(m);
                coords_with(&dm, q + 1, dst.basis.len(), |t| dst.index.get(t).copied())
                    .expect("d raises degree by one")
            })
            .collect();
        let m = QMatrix::from_columns(dst.basis.len(), &columns);
        Ok(self.dmats[q as usize].get_or_init(|| m))
    }

    pub fn validate(&self) -> ValidationReport {
        let minimal = self
            .d_gen
            .iter()
            .all(|d| d.terms().all(|(m, _)| m.word_length() >= 2));
        let weight_preserving = self.alg.is_weighted().then(|| {
            self.d_gen
                .iter()
                .zip(self.alg.generators())
                .all(|(d, g)| d.terms().all(|(m, _)| m.weight(&self.alg) == g.weight))
        });
        ValidationReport {
            d_squared_zero: self.d_squared_failure().is_none(),
            minimal,
            weight_preserving,
        }
    }

    /// Adjoins one closed generator of the given degree.
    pub fn adjoin_closed(&self, name: &str, degree: u32, weight: Option<u32>) -> Result<Dga> {
        let alg = Arc::new(self.alg.extended(vec![GeneratorSpec {
            name: name.to_string(),
            degree,
            weight,
        }])?);
        let d = self
            .alg
            .generators()
            .iter()
            .zip(&self.d_gen)
            .map(|(g, e)| Ok((g.name.clone(), e.embed(&alg)?)))
            .collect::<Result<Vec<_>>>()?;
        let cap = if alg.has_even_generators() {
            Some(self.cap + degree)
        } else {
            None
        };
        Dga::new(alg, d, cap)
    }

    pub fn to_file(&self) -> DgaFile {
        DgaFile {
            generators: self.alg.generators().to_vec(),
            differential: self
                .alg
                .generators()
                .iter()
                .zip(&self.d_gen)
                .filter(|(_, d)| !d.is_zero())
                .map(|(g, d)| (g.name.clone(), d.to_string()))
                .collect(),
            degree_cap: Some(self.cap),
        }
    }

    pub fn from_file(file: &DgaFile) -> Result<Dga> {
        let alg = Arc::new(GradedAlgebra::new(file.generators.clone())?);
        let d = file
            .differential
            .iter()
            .map(|(g, e)| Ok((g.clone(), parse_element(e, &alg)?)))
            .collect::<Result<Vec<_>>>()?;
        Dga::new(alg, d, file.degree_cap)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("DGA serializes")
    }

    pub fn from_json(text: &str) -> Result<Dga> {
        let file: DgaFile =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Dga::from_file(&file)
    }
}

/// On-disk DGA description:
/// `{"generators":[{"name":"x1","degree":1,"weight":1},…],"differential":{"x3":"x1*x2"},"degree_cap":3}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgaFile {
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub differential: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<u32>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlin::rank;

    fn heisenberg() -> Dga {
        Dga::from_text(
            (1..=3).map(|i| GeneratorSpec::weighted(format!("x{i}"), 1, i)).collect(),
            &[("x3", "x1*x2")],
            None,
        )
        .unwrap()
    }

    #[test]
    fn leibniz_on_heisenberg() {
        let d = heisenberg();
        let x3 = d.generator("x3").unwrap();
        assert_eq!(d.differential(&x3).to_string(), "x1*x2");
        let u = d.parse("x1*x3").unwrap();
        // d(x1 x3) = -x1 dx3 = -x1 x1 x2 = 0
        assert!(d.differential(&u).is_zero());
        let v = d.parse("x2*x3").unwrap();
        assert!(d.differential(&v).is_zero());
        assert!(d.differential(&d.parse("1").unwrap()).is_zero());
    }

    #[test]
    fn matrices_and_caps() {
        let d = heisenberg();
        assert_eq!(d.degree_cap(), 3);
        assert_eq!(rank(d.d_matrix(1).unwrap()), 1);
        assert!(d.d_matrix(0).unwrap().is_zero());
        assert!(matches!(d.d_matrix(4), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn even_generators_need_a_cap() {
        let r = Dga::from_text(
            vec![GeneratorSpec::new("x", 2), GeneratorSpec::new("y", 3)],
            &[("y", "x^2")],
            None,
        );
        assert_eq!(r.unwrap_err(), Error::MissingDegreeCap);
    }

    #[test]
    fn non_differential_is_rejected() {
        // d²(x4) = d(x3)*x5 = x1*x2*x5
        let r = Dga::from_text(
            GradedAlgebra::exterior(5).generators().to_vec(),
            &[("x3", "x1*x2"), ("x4", "x3*x5")],
            None,
        );
        assert_eq!(
            r.unwrap_err(),
            Error::NotADifferential {
                generator: "x4".into()
            }
        );
    }

    #[test]
    fn wrong_degree_is_rejected() {
        let r = Dga::from_text(
            GradedAlgebra::exterior(3).generators().to_vec(),
            &[("x3", "x1")],
            None,
        );
        assert!(matches!(r, Err(Error::WrongDifferentialDegree { .. })));
    }

    #[test]
    fn validate_reports_minimality_and_weights() {
        let r = heisenberg().validate();
        assert!(r.d_squared_zero && r.minimal);
        assert_eq!(r.weight_preserving, Some(true));
        let all_zero = Dga::from_text(GradedAlgebra::exterior(2).generators().to_vec(), &[], None)
            .unwrap()
            .validate();
        assert!(all_zero.d_squared_zero);
        assert_eq!(all_zero.weight_preserving, None);
    }

    #[test]
    fn json_round_trip() {
        let d = heisenberg();
        let text = d.to_json();
        assert_eq!(
            text,
            r#"{"generators":[{"name":"x1","degree":1,"weight":1},{"name":"x2","degree":1,"weight":2},{"name":"x3","degree":1,"weight":3}],"differential":{"x3":"x1*x2"},"degree_cap":3}"#
        );
        assert_eq!(Dga::from_json(&text).unwrap(), d);
    }
}
