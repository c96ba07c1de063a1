//! Triple Massey products.
//!
//! For closed `a, b, c` of degrees `p, q, r` with `ab = dg` and `bc = dh`,
//! the cocycle `k = g·c + (−1)^{p−1} a·h` represents `⟨[a],[b],[c]⟩`,
//! well defined in `H^{p+q+r−1}` modulo `[a]·H^{q+r−1} + [c]·H^{p+q−1}`.
//! The indeterminacy is materialized as a subspace of the target slice that
//! also contains the coboundaries, so "nontrivial" is one reduction.

use serde::Serialize;

use crate::cohom::{class_basis, CohomClass};
use crate::dga::Dga;
use crate::error::{Error, Result};
use crate::grade::Element;
use crate::qlin::{is_zero_vector, solve_any, QVector, Subspace};

/// `class ∪ H^degree`, one summand of an indeterminacy subspace.
#[derive(Clone, Debug)]
pub struct IndeterminacyFactor {
    pub class: CohomClass,
    pub degree: u32,
}

#[derive(Clone, Debug)]
pub struct MasseyVerdict {
    pub defined: bool,
    pub degree: u32,
    pub representative: Option<Element>,
    /// `(g, h)` with `dg = ab`, `dh = bc`.
    pub primitives: Option<(Element, Element)>,
    /// Indeterminacy plus coboundaries, in slice coordinates of `degree`.
    pub indeterminacy: Option<Subspace>,
    /// Dimension of the indeterminacy inside `H^degree`.
    pub indeterminacy_dim: usize,
    pub nontrivial: bool,
    /// Canonical representative of `k` modulo the indeterminacy.
    pub reduced: Option<Element>,
    pub inputs: [String; 3],
    pub input_degrees: [u32; 3],
}

/// JSON shape of a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MasseyReport {
    pub defined: bool,
    pub nontrivial: bool,
    pub degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representative: Option<String>,
    pub indeterminacy_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primitives: Option<Primitives>,
    pub inputs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Primitives {
    pub g: String,
    pub h: String,
}

impl MasseyVerdict {
    pub fn report(&self) -> MasseyReport {
        MasseyReport {
            defined: self.defined,
            nontrivial: self.nontrivial,
            degree: self.degree,
            representative: self.representative.as_ref().map(|k| k.to_string()),
            indeterminacy_dim: self.indeterminacy_dim,
            primitives: self.primitives.as_ref().map(|(g, h)| Primitives {
                g: g.to_string(),
                h: h.to_string(),
            }),
            inputs: self.inputs.to_vec(),
        }
    }
}

fn check_input(dga: &Dga, a: &CohomClass) -> Result<()> {
    if a.degree == 0 {
        return Err(Error::BadParameter(
            "Massey product inputs must have positive degree".into(),
        ));
    }
    dga.coords(&a.representative, a.degree)?;
    if !dga.differential(&a.representative).is_zero() {
        return Err(Error::NotClosed);
    }
    Ok(())
}

fn primitive(dga: &Dga, target: &Element, degree: u32) -> Result<Option<Element>> {
    let v = dga.coords(target, degree + 1)?;
    match solve_any(dga.d_matrix(degree)?, &v) {
        Some(x) => Ok(Some(dga.element(degree, &x)?)),
        None => Ok(None),
    }
}

fn standard_factors(a: &CohomClass, b: &CohomClass, c: &CohomClass) -> Vec<IndeterminacyFactor> {
    vec![
        IndeterminacyFactor {
            class: a.clone(),
            degree: b.degree + c.degree - 1,
        },
        IndeterminacyFactor {
            class: c.clone(),
            degree: a.degree + b.degree - 1,
        },
    ]
}

/// `⟨a, b, c⟩` with the standard indeterminacy.
pub fn triple_massey(dga: &Dga, a: &CohomClass, b: &CohomClass, c: &CohomClass) -> Result<MasseyVerdict> {
    triple_massey_modulo(dga, a, b, c, &standard_factors(a, b, c))
}

/// `⟨a, b, c⟩` modulo `Σ factor.class ∪ H^{factor.degree}` (plus coboundaries).
pub fn triple_massey_modulo(
    dga: &Dga,
    a: &CohomClass,
    b: &CohomClass,
    c: &CohomClass,
    factors: &[IndeterminacyFactor],
) -> Result<MasseyVerdict> {
    for x in [a, b, c] {
        check_input(dga, x)?;
    }
    let target = a.degree + b.degree + c.degree - 1;
    if target > dga.degree_cap() {
        return Err(Error::CapExceeded {
            degree: target,
            cap: dga.degree_cap(),
        });
    }
    let ab = &a.representative * &b.representative;
    let bc = &b.representative * &c.representative;
    let g = primitive(dga, &ab, a.degree + b.degree - 1)?;
    let h = primitive(dga, &bc, b.degree + c.degree - 1)?;
    match (g, h) {
        (Some(g), Some(h)) => assemble(dga, a, b, c, g, h, factors),
        _ => Ok(MasseyVerdict {
            defined: false,
            degree: target,
            representative: None,
            primitives: None,
            indeterminacy: None,
            indeterminacy_dim: 0,
            nontrivial: false,
            reduced: None,
            inputs: inputs(a, b, c),
            input_degrees: [a.degree, b.degree, c.degree],
        }),
    }
}

/// `⟨a, b, c⟩` computed from caller-supplied primitives `g`, `h`.
pub fn triple_massey_with_primitives(
    dga: &Dga,
    a: &CohomClass,
    b: &CohomClass,
    c: &CohomClass,
    g: Element,
    h: Element,
    factors: &[IndeterminacyFactor],
) -> Result<MasseyVerdict> {
    for x in [a, b, c] {
        check_input(dga, x)?;
    }
    let ab = &a.representative * &b.representative;
    let bc = &b.representative * &c.representative;
    if dga.differential(&g) != ab || dga.differential(&h) != bc {
        return Err(Error::BadParameter("supplied primitives do not bound a*b, b*c".into()));
    }
    assemble(dga, a, b, c, g, h, factors)
}

/// Standard indeterminacy factors for `⟨a, b, c⟩`.
pub fn standard_indeterminacy(a: &CohomClass, b: &CohomClass, c: &CohomClass) -> Vec<IndeterminacyFactor> {
    standard_factors(a, b, c)
}

fn inputs(a: &CohomClass, b: &CohomClass, c: &CohomClass) -> [String; 3] {
    [a, b, c].map(|x| x.representative.to_string())
}

fn assemble(
    dga: &Dga,
    a: &CohomClass,
    b: &CohomClass,
    c: &CohomClass,
    g: Element,
    h: Element,
    factors: &[IndeterminacyFactor],
) -> Result<MasseyVerdict> {
    let target = a.degree + b.degree + c.degree - 1;
    let gc = &g * &c.representative;
    let ah = &a.representative * &h;
    let k = if a.degree % 2 == 1 { &gc + &ah } else { &gc - &ah };
    assert!(dga.differential(&k).is_zero(), "Massey representative must be closed");
    let coboundaries = dga.cohomology(target)?.coboundaries.clone();
    let mut vectors = Vec::new();
    for f in factors {
        if f.class.degree + f.degree != target {
            return Err(Error::BadParameter(format!(
                "indeterminacy factor of degree {} + {} does not land in degree {target}",
                f.class.degree, f.degree
            )));
        }
        for r in class_basis(dga, f.degree)? {
            let prod = &f.class.representative * &r.representative;
            vectors.push(dga.coords(&prod, target)?);
        }
    }
    let indeterminacy = coboundaries.extend(vectors);
    let kv = dga.coords(&k, target)?;
    let reduced: QVector = indeterminacy.reduce(&kv);
    let nontrivial = !is_zero_vector(&reduced);
    Ok(MasseyVerdict {
        defined: true,
        degree: target,
        indeterminacy_dim: indeterminacy.dim() - coboundaries.dim(),
        representative: Some(k),
        primitives: Some((g, h)),
        indeterminacy: Some(indeterminacy),
        nontrivial,
        reduced: Some(dga.element(target, &reduced)?),
        inputs: inputs(a, b, c),
        input_degrees: [a.degree, b.degree, c.degree],
    })
}

/// Result of scanning all triples of class-basis elements.
#[derive(Clone, Debug)]
pub struct FormalityScan {
    pub max_degree: u32,
    pub triples_examined: usize,
    pub defined: usize,
    pub nontrivial: Vec<MasseyVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalityScanReport {
    pub max_degree: u32,
    pub triples_examined: usize,
    pub defined: usize,
    pub conclusion: String,
    pub nontrivial: Vec<MasseyReport>,
}

impl FormalityScan {
    pub fn obstruction_found(&self) -> bool {
        !self.nontrivial.is_empty()
    }

    /// An empty scan never certifies formality.
    pub fn conclusion(&self) -> &'static str {
        if self.obstruction_found() {
            "nonformal: nontrivial triple Massey product found"
        } else {
            "no obstruction found at this depth"
        }
    }

    pub fn report(&self) -> FormalityScanReport {
        FormalityScanReport {
            max_degree: self.max_degree,
            triples_examined: self.triples_examined,
            defined: self.defined,
            conclusion: self.conclusion().to_string(),
            nontrivial: self.nontrivial.iter().map(MasseyVerdict::report).collect(),
        }
    }
}

/// Every nontrivial `⟨a, b, c⟩` over class-basis elements of positive
/// degree with target degree `≤ max_degree` (and `≤` the cap), in order of
/// degrees then basis indices.
pub fn formality_scan(dga: &Dga, max_degree: u32) -> Result<FormalityScan> {
    let top = max_degree.min(dga.degree_cap());
    let mut classes: Vec<Vec<CohomClass>> = Vec::new();
    for q in 0..=top {
        classes.push(if q == 0 { Vec::new() } else { class_basis(dga, q)? });
    }
    let mut scan = FormalityScan {
        max_degree,
        triples_examined: 0,
        defined: 0,
        nontrivial: Vec::new(),
    };
    for p in 1..=top {
        for q in 1..=top {
            for r in 1..=top {
                if p + q + r - 1 > top {
                    continue;
                }
                for a in &classes[p as usize] {
                    for b in &classes[q as usize] {
                        for c in &classes[r as usize] {
                            scan.triples_examined += 1;
                            let v = triple_massey(dga, a, b, c)?;
                            if v.defined {
                                scan.defined += 1;
                            }
                            if v.nontrivial {
                                scan.nontrivial.push(v);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohom::class_of;
    use crate::models::{abelian, chevalley_eilenberg, cpn, heisenberg, vn_model};

    fn cls(dga: &Dga, text: &str) -> CohomClass {
        class_of(dga, &dga.parse(text).unwrap()).unwrap()
    }

    #[test]
    fn heisenberg_x1_x1_x2() {
        let h = chevalley_eilenberg(&heisenberg()).unwrap();
        let (x1, x2) = (cls(&h, "x1"), cls(&h, "x2"));
        let v = triple_massey(&h, &x1, &x1, &x2).unwrap();
        assert!(v.defined && v.nontrivial);
        assert_eq!(v.degree, 2);
        let (g, hh) = v.primitives.clone().unwrap();
        assert!(g.is_zero());
        assert_eq!(hh.to_string(), "x3");
        assert_eq!(v.representative.unwrap().to_string(), "x1*x3");
        // [x1]H^1 + [x2]H^1 is spanned by x1x2 = d(x3)
        assert_eq!(v.indeterminacy_dim, 0);
    }

    #[test]
    fn vn_x2_x1_x2() {
        for m in [2, 3] {
            let d = vn_model(2 * m).unwrap();
            let (x1, x2) = (cls(&d, "x1"), cls(&d, "x2"));
            let v = triple_massey(&d, &x2, &x1, &x2).unwrap();
            assert!(v.defined && v.nontrivial, "m = {m}");
            let (g, h) = v.primitives.clone().unwrap();
            assert_eq!(g.to_string(), "-x3");
            assert_eq!(h.to_string(), "x3");
            assert_eq!(v.representative.unwrap().to_string(), "2*x2*x3");
        }
    }

    #[test]
    fn undefined_when_cup_nonzero() {
        let t = abelian(3);
        let (x1, x2) = (cls(&t, "x1"), cls(&t, "x2"));
        let v = triple_massey(&t, &x1, &x2, &x1).unwrap();
        assert!(!v.defined && !v.nontrivial);
        assert!(v.representative.is_none());
    }

    #[test]
    fn cp2_product_is_trivial() {
        let cp2 = cpn(2).unwrap();
        let x = cls(&cp2, "x");
        let x2 = cls(&cp2, "x^2");
        let v = triple_massey(&cp2, &x2, &x, &x2).unwrap();
        assert!(v.defined);
        assert!(!v.nontrivial);
        assert_eq!(v.degree, 9);
    }

    #[test]
    fn scans() {
        let h = chevalley_eilenberg(&heisenberg()).unwrap();
        let s = formality_scan(&h, 3).unwrap();
        assert!(s.obstruction_found());
        let t = formality_scan(&abelian(4), 4).unwrap();
        assert!(!t.obstruction_found());
        assert_eq!(t.conclusion(), "no obstruction found at this depth");
        assert!(t.triples_examined > 0);
    }

    #[test]
    fn zero_degree_inputs_are_rejected() {
        let h = chevalley_eilenberg(&heisenberg()).unwrap();
        let one = CohomClass::unit(&h);
        let x1 = cls(&h, "x1");
        assert!(triple_massey(&h, &one, &x1, &x1).is_err());
    }
}
