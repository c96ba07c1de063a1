//! Free graded-commutative algebras on named generators.
//!
//! Odd-degree generators anticommute and square to zero, even-degree
//! generators are polynomial. A [`Monomial`] is an exponent vector; its
//! canonical word is the generators in index order, each repeated by its
//! exponent, and Koszul signs are counted against that word.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlin::{zero_vector, QVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    /// Optional second grading (the weight `i` of `x_i` in nilpotent models).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u32>,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        GeneratorSpec {
            name: name.into(),
            degree,
            weight: None,
        }
    }

    pub fn weighted(name: impl Into<String>, degree: u32, weight: u32) -> Self {
        GeneratorSpec {
            name: name.into(),
            degree,
            weight: Some(weight),
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// The free graded-commutative algebra on an ordered list of generators.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    gens: Vec<GeneratorSpec>,
    index: HashMap<String, usize>,
}

impl PartialEq for GradedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for GradedAlgebra {}

impl GradedAlgebra {
    pub fn new(gens: Vec<GeneratorSpec>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if !is_identifier(&g.name) {
                return Err(Error::InvalidGenerators(format!(
                    "`{}` is not an identifier",
                    g.name
                )));
            }
            if g.degree == 0 {
                return Err(Error::InvalidGenerators(format!(
                    "`{}` has degree 0",
                    g.name
                )));
            }
            if g.weight == Some(0) {
                return Err(Error::InvalidGenerators(format!(
                    "`{}` has weight 0",
                    g.name
                )));
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::InvalidGenerators(format!(
                    "duplicate generator `{}`",
                    g.name
                )));
            }
        }
        Ok(GradedAlgebra { gens, index })
    }

    /// Exterior algebra on `n` degree-1 generators `x1..xn`.
    pub fn exterior(n: usize) -> Self {
        Self::new(
            (1..=n)
                .map(|i| GeneratorSpec::new(format!("x{i}"), 1))
                .collect(),
        )
        .expect("generated names are valid")
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.gens[i].is_odd()
    }

    pub fn has_even_generators(&self) -> bool {
        self.gens.iter().any(|g| !g.is_odd())
    }

    /// Whether every generator carries a weight.
    pub fn is_weighted(&self) -> bool {
        !self.gens.is_empty() && self.gens.iter().all(|g| g.weight.is_some())
    }

    /// Sum of odd generator degrees: the top nonzero degree when there are no
    /// even generators.
    pub fn top_exterior_degree(&self) -> u32 {
        self.gens.iter().filter(|g| g.is_odd()).map(|g| g.degree).sum()
    }

    /// This algebra with `more` generators appended.
    pub fn extended(&self, more: Vec<GeneratorSpec>) -> Result<GradedAlgebra> {
        let mut gens = self.gens.clone();
        gens.extend(more);
        GradedAlgebra::new(gens)
    }

    /// A generator name not yet used, starting from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.index.contains_key(&name) {
            name.push('_');
        }
        name
    }

    /// All monomials of total degree `d`, in canonical order.
    pub fn degree_basis(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.gens.len()];
        self.enumerate(0, d, &mut exps, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial(exps.clone()));
            return;
        }
        if i == self.gens.len() {
            return;
        }
        let deg = self.gens[i].degree;
        let max = if self.is_odd(i) { 1 } else { left / deg };
        for e in 0..=max.min(left / deg) {
            exps[i] = e;
            self.enumerate(i + 1, left - e * deg, exps, out);
        }
        exps[i] = 0;
    }
}

/// Exponent vector over the generators of an algebra.
///
/// Ordered so that `x1*x2 < x1*x3 < x2*x3`: exponent vectors compare
/// lexicographically with larger exponents first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self, alg: &GradedAlgebra) -> u32 {
        self.0
            .iter()
            .zip(&alg.gens)
            .map(|(&e, g)| e * g.degree)
            .sum()
    }

    pub fn weight(&self, alg: &GradedAlgebra) -> Option<u32> {
        self.0
            .iter()
            .zip(&alg.gens)
            .map(|(&e, g)| g.weight.map(|w| e * w))
            .sum()
    }

    /// Number of generator factors in the canonical word.
    pub fn word_length(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Generator indices of the canonical word, with repetition.
    pub fn factors(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }

    /// `self * other` as `(negated, product)`, or `None` if it vanishes.
    pub fn multiply(&self, other: &Monomial, alg: &GradedAlgebra) -> Option<(bool, Monomial)> {
        // count pairs (odd factor i of self, odd factor j of other) with j < i
        let mut swaps = 0usize;
        let mut odd_other_below = 0usize;
        for i in 0..self.0.len() {
            if !alg.is_odd(i) {
                continue;
            }
            if self.0[i] > 0 {
                if other.0[i] > 0 {
                    return None;
                }
                swaps += odd_other_below;
            }
            if other.0[i] > 0 {
                odd_other_below += 1;
            }
        }
        let exps = self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect();
        Some((swaps % 2 == 1, Monomial(exps)))
    }
}

/// A linear combination of monomials with nonzero rational coefficients.
#[derive(Clone)]
pub struct Element {
    alg: Arc<GradedAlgebra>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl Element {
    pub fn zero(alg: &Arc<GradedAlgebra>) -> Self {
        Element {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: &Arc<GradedAlgebra>) -> Self {
        Self::monomial(alg, Monomial::unit(alg.len()), Rational::one())
    }

    pub fn scalar(alg: &Arc<GradedAlgebra>, c: Rational) -> Self {
        Self::monomial(alg, Monomial::unit(alg.len()), c)
    }

    pub fn generator(alg: &Arc<GradedAlgebra>, name: &str) -> Result<Self> {
        let i = alg
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(Self::monomial(alg, Monomial::generator(alg.len(), i), Rational::one()))
    }

    /// Product of the named generators in the given order (signs included).
    pub fn word(alg: &Arc<GradedAlgebra>, names: &[&str]) -> Result<Self> {
        let mut acc = Self::one(alg);
        for name in names {
            acc = &acc * &Self::generator(alg, name)?;
        }
        Ok(acc)
    }

    pub fn monomial(alg: &Arc<GradedAlgebra>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), alg.len(), "monomial does not fit the algebra");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element {
            alg: alg.clone(),
            terms,
        }
    }

    pub fn from_terms(
        alg: &Arc<GradedAlgebra>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut e = Self::zero(alg);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn same_algebra(&self, other: &Element) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg
    }

    /// The common degree of all terms; `None` for zero or mixed elements.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.degree(&self.alg));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree(&self.alg) == d)
    }

    /// The common weight of all terms, if every generator is weighted.
    pub fn weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(|m| m.weight(&self.alg));
        let first = ws.next()??;
        ws.all(|w| w == Some(first)).then_some(first)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero(&self.alg);
        }
        Element {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x * c))
                .collect(),
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        if !self.same_algebra(other) {
            return Err(Error::MismatchedAlgebra);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Graded-commutative product with Koszul signs.
    pub fn multiply(&self, other: &Element) -> Result<Element> {
        if !self.same_algebra(other) {
            return Err(Error::MismatchedAlgebra);
        }
        let mut out = Element::zero(&self.alg);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((neg, m)) = m1.multiply(m2, &self.alg) {
                    let c = c1 * c2;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Element {
        let mut acc = Element::one(&self.alg);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coordinates in [`GradedAlgebra::degree_basis`] order.
    pub fn to_coords(&self, d: u32) -> Result<QVector> {
        let basis = self.alg.degree_basis(d);
        let index: HashMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        coords_with(self, d, basis.len(), |m| index.get(m).copied())
    }

    pub fn from_coords(alg: &Arc<GradedAlgebra>, d: u32, coords: &[Rational]) -> Element {
        let basis = alg.degree_basis(d);
        assert_eq!(basis.len(), coords.len(), "coordinate vector has wrong length");
        Element::from_terms(alg, basis.into_iter().zip(coords.iter().cloned()))
    }

    /// Re-expresses this element in `target`, matching generators by name.
    pub fn embed(&self, target: &Arc<GradedAlgebra>) -> Result<Element> {
        let map: Vec<usize> = self
            .alg
            .gens
            .iter()
            .map(|g| {
                target
                    .index_of(&g.name)
                    .ok_or_else(|| Error::UnknownGenerator(g.name.clone()))
            })
            .collect::<Result<_>>()?;
        let mut out = Element::zero(target);
        for (m, c) in &self.terms {
            let mut word = Element::scalar(target, c.clone());
            for i in m.factors() {
                word = &word * &Element::monomial(target, Monomial::generator(target.len(), map[i]), Rational::one());
            }
            out = &out + &word;
        }
        Ok(out)
    }
}

pub(crate) fn coords_with(
    u: &Element,
    d: u32,
    len: usize,
    index: impl Fn(&Monomial) -> Option<usize>,
) -> Result<QVector> {
    let mut v = zero_vector(len);
    for (m, c) in &u.terms {
        match index(m) {
            Some(i) if m.degree(&u.alg) == d => v[i] = c.clone(),
            _ => return Err(Error::NotHomogeneous { expected: d }),
        }
    }
    Ok(v)
}

impl<'a> Add for &'a Element {
    type Output = Element;
    fn add(self, rhs: &'a Element) -> Element {
        self.try_add(rhs).expect("adding elements of different algebras")
    }
}

impl<'a> Sub for &'a Element {
    type Output = Element;
    fn sub(self, rhs: &'a Element) -> Element {
        self.try_add(&-rhs).expect("subtracting elements of different algebras")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul for &'a Element {
    type Output = Element;
    fn mul(self, rhs: &'a Element) -> Element {
        self.multiply(rhs).expect("multiplying elements of different algebras")
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, alg: &GradedAlgebra) -> fmt::Result {
    let mut first = true;
    for (e, g) in m.0.iter().zip(&alg.gens) {
        if *e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&g.name)?;
        if *e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Renders in the element grammar accepted by [`crate::parse::parse_element`].
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_unit() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, m, &self.alg)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlin::int;

    fn ext(n: usize) -> Arc<GradedAlgebra> {
        Arc::new(GradedAlgebra::exterior(n))
    }

    fn g(alg: &Arc<GradedAlgebra>, name: &str) -> Element {
        Element::generator(alg, name).unwrap()
    }

    #[test]
    fn koszul_sign_and_odd_squares() {
        let a = ext(3);
        let (x1, x2) = (g(&a, "x1"), g(&a, "x2"));
        assert_eq!(&x1 * &x2, -&(&x2 * &x1));
        assert!((&x1 * &x1).is_zero());
    }

    #[test]
    fn even_generators_commute() {
        let a = Arc::new(
            GradedAlgebra::new(vec![
                GeneratorSpec::new("x", 2),
                GeneratorSpec::new("y", 3),
                GeneratorSpec::new("t", 1),
            ])
            .unwrap(),
        );
        let x = g(&a, "x");
        for u in [g(&a, "y"), g(&a, "t"), &g(&a, "y") * &g(&a, "t")] {
            assert_eq!(&x * &u, &u * &x);
        }
        assert_eq!(x.pow(3).to_string(), "x^3");
    }

    #[test]
    fn degree_basis_counts() {
        assert_eq!(ext(4).degree_basis(2).len(), 6);
        assert_eq!(ext(4).degree_basis(0), vec![Monomial::unit(4)]);
        let cp = GradedAlgebra::new(vec![
            GeneratorSpec::new("x", 2),
            GeneratorSpec::new("y", 5),
        ])
        .unwrap();
        let b = cp.degree_basis(4);
        assert_eq!(b, vec![Monomial::from_exponents(vec![2, 0])]);
    }

    #[test]
    fn canonical_order_in_degree_two() {
        let a = ext(3);
        let names: Vec<String> = a
            .degree_basis(2)
            .into_iter()
            .map(|m| Element::monomial(&a, m, int(1)).to_string())
            .collect();
        assert_eq!(names, ["x1*x2", "x1*x3", "x2*x3"]);
    }

    #[test]
    fn coords_normalize_signs() {
        let a = ext(3);
        assert_eq!(Element::one(&a).to_coords(0).unwrap(), vec![int(1)]);
        let (x1, x2) = (g(&a, "x1"), g(&a, "x2"));
        let u = &(&x1 * &x2) - &(&x2 * &x1);
        assert_eq!(u.to_coords(2).unwrap(), vec![int(2), int(0), int(0)]);
        assert_eq!(
            x1.to_coords(2),
            Err(Error::NotHomogeneous { expected: 2 })
        );
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = ext(2);
        let b = ext(3);
        assert_eq!(
            g(&a, "x1").multiply(&g(&b, "x1")),
            Err(Error::MismatchedAlgebra)
        );
    }

    #[test]
    fn weights_add_under_products() {
        let a = Arc::new(
            GradedAlgebra::new(
                (1..=4)
                    .map(|i| GeneratorSpec::weighted(format!("x{i}"), 1, i))
                    .collect(),
            )
            .unwrap(),
        );
        let u = &g(&a, "x1") * &g(&a, "x3");
        assert_eq!(u.weight(), Some(4));
        assert_eq!((&u + &(&g(&a, "x2") * &g(&a, "x1"))).weight(), None);
    }

    #[test]
    fn invalid_generator_sets() {
        assert!(GradedAlgebra::new(vec![GeneratorSpec::new("x", 0)]).is_err());
        assert!(GradedAlgebra::new(vec![
            GeneratorSpec::new("x", 1),
            GeneratorSpec::new("x", 2)
        ])
        .is_err());
        assert!(GradedAlgebra::new(vec![GeneratorSpec::new("1x", 1)]).is_err());
    }
}
