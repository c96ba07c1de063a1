//! Nilpotent Lie algebras, their Chevalley–Eilenberg DGAs, and the
//! projective-space and circle-product models.
//!
//! Convention: for a bracket table with `[e_i, e_j] = Σ_k c^{ij}_k e_k`, the
//! CE differential on the dual generators is
//! `d x_k = Σ_{i<j} c^{ij}_k x_i ∧ x_j`. This gives `dx3 = x1∧x2` for the
//! Heisenberg algebra and `dx5 = 3 x1∧x4 + x2∧x3` for `V_5`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dga::Dga;
use crate::error::{Error, Result};
use crate::grade::{Element, GeneratorSpec, GradedAlgebra, Monomial};
use crate::qlin::{format_rational, int, parse_rational, zero_vector, QVector, Rational};

/// A finite-dimensional Lie algebra with basis `e_1..e_n` (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    /// `(i, j)` with `i < j` ↦ nonzero `(k, c)` pairs.
    brackets: BTreeMap<(usize, usize), BTreeMap<usize, Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JacobiCheck {
    Pass,
    Fail { i: usize, j: usize, k: usize },
}

impl JacobiCheck {
    pub fn passed(&self) -> bool {
        matches!(self, JacobiCheck::Pass)
    }
}

impl LieAlgebra {
    pub fn new(dim: usize) -> Self {
        LieAlgebra {
            dim,
            brackets: BTreeMap::new(),
        }
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new(dim)
    }

    /// Adds `c·e_k` to `[e_i, e_j]` (and `−c·e_k` to `[e_j, e_i]`).
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, c: Rational) -> Result<()> {
        let n = self.dim;
        if i == 0 || j == 0 || k == 0 || i > n || j > n || k > n || i == j {
            return Err(Error::BadBracket(format!("[e{i}, e{j}] -> e{k} in dimension {n}")));
        }
        let (a, b, c) = if i < j { (i, j, c) } else { (j, i, -c) };
        let entry = self.brackets.entry((a, b)).or_default();
        let cur = entry.remove(&k).unwrap_or_else(Rational::zero) + c;
        if !cur.is_zero() {
            entry.insert(k, cur);
        }
        if entry.is_empty() {
            self.brackets.remove(&(a, b));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Structure constant `c^{ij}_k`, antisymmetric in `i, j`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        if i == j {
            return Rational::zero();
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        self.brackets
            .get(&(a, b))
            .and_then(|t| t.get(&k))
            .map(|c| c * int(sign))
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero brackets `(i, j, k, c)` with `i < j`, in index order.
    pub fn brackets(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        self.brackets
            .iter()
            .flat_map(|(&(i, j), t)| t.iter().map(move |(&k, c)| (i, j, k, c)))
    }

    /// `[u, v]` for coordinate vectors (index 0 holds `e_1`).
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> QVector {
        let mut out = zero_vector(self.dim);
        for (&(i, j), terms) in &self.brackets {
            let uv = &u[i - 1] * &v[j - 1] - &u[j - 1] * &v[i - 1];
            if uv.is_zero() {
                continue;
            }
            for (&k, c) in terms {
                out[k - 1] += &uv * c;
            }
        }
        out
    }

    fn basis_vector(&self, i: usize) -> QVector {
        let mut v = zero_vector(self.dim);
        v[i - 1] = Rational::one();
        v
    }

    /// Checks `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0` for
    /// all `i < j < k`; reports the first failing triple.
    pub fn jacobi_check(&self) -> JacobiCheck {
        let n = self.dim;
        let e: Vec<QVector> = (1..=n).map(|i| self.basis_vector(i)).collect();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    let (a, b, c) = (&e[i - 1], &e[j - 1], &e[k - 1]);
                    let t1 = self.bracket(&self.bracket(a, b), c);
                    let t2 = self.bracket(&self.bracket(b, c), a);
                    let t3 = self.bracket(&self.bracket(c, a), b);
                    if t1
                        .iter()
                        .zip(&t2)
                        .zip(&t3)
                        .any(|((x, y), z)| !(x + y + z).is_zero())
                    {
                        return JacobiCheck::Fail { i, j, k };
                    }
                }
            }
        }
        JacobiCheck::Pass
    }

    pub fn to_file(&self) -> LieAlgebraFile {
        let mut grouped: BTreeMap<(usize, usize), Vec<BracketTerm>> = BTreeMap::new();
        for (i, j, k, c) in self.brackets() {
            grouped.entry((i, j)).or_default().push(BracketTerm {
                k,
                c: format_rational(c),
            });
        }
        LieAlgebraFile {
            dim: self.dim,
            brackets: grouped
                .into_iter()
                .map(|((i, j), terms)| BracketEntry { i, j, terms })
                .collect(),
        }
    }

    pub fn from_file(file: &LieAlgebraFile) -> Result<Self> {
        let mut l = LieAlgebra::new(file.dim);
        for b in &file.brackets {
            for t in &b.terms {
                let c = parse_rational(&t.c)
                    .ok_or_else(|| Error::Format(format!("bad rational `{}`", t.c)))?;
                l.set_bracket(b.i, b.j, t.k, c)?;
            }
        }
        Ok(l)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("Lie algebra serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: LieAlgebraFile =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_file(&file)
    }
}

/// `{"dim":n,"brackets":[{"i":1,"j":2,"terms":[{"k":3,"c":"1"}]},…]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieAlgebraFile {
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<BracketTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketTerm {
    pub k: usize,
    pub c: String,
}

/// The truncated Witt-type algebra `V_n`: `[e_i, e_j] = (j − i) e_{i+j}` when
/// `i + j ≤ n`, zero otherwise.
pub fn vn(n: usize) -> Result<LieAlgebra> {
    if n < 3 {
        return Err(Error::BadDimension(n));
    }
    let mut l = LieAlgebra::new(n);
    for i in 1..=n {
        for j in i + 1..=n {
            if i + j <= n {
                l.set_bracket(i, j, i + j, int((j - i) as i64))?;
            }
        }
    }
    Ok(l)
}

/// The Heisenberg algebra, `V_3`.
pub fn heisenberg() -> LieAlgebra {
    vn(3).expect("n = 3 is valid")
}

/// CE complex: `n` degree-1 generators `x1..xn` with weight `i` on `x_i`.
pub fn chevalley_eilenberg(l: &LieAlgebra) -> Result<Dga> {
    if let JacobiCheck::Fail { i, j, k } = l.jacobi_check() {
        return Err(Error::JacobiFailure { i, j, k });
    }
    chevalley_eilenberg_unchecked(l)
}

/// CE complex without the Jacobi pre-check; `Dga::new` still rejects
/// `d² ≠ 0`.
pub fn chevalley_eilenberg_unchecked(l: &LieAlgebra) -> Result<Dga> {
    let n = l.dim();
    let alg = Arc::new(GradedAlgebra::new(
        (1..=n)
            .map(|i| GeneratorSpec::weighted(format!("x{i}"), 1, i as u32))
            .collect(),
    )?);
    let mut d: Vec<Element> = (0..n).map(|_| Element::zero(&alg)).collect();
    for (i, j, k, c) in l.brackets() {
        let mut exps = vec![0; n];
        exps[i - 1] = 1;
        exps[j - 1] = 1;
        let term = Element::monomial(&alg, Monomial::from_exponents(exps), c.clone());
        d[k - 1] = &d[k - 1] + &term;
    }
    let d = d
        .into_iter()
        .enumerate()
        .map(|(i, e)| (format!("x{}", i + 1), e))
        .collect();
    Dga::new(alg, d, None)
}

/// The CE model of the torus `ℝⁿ/ℤⁿ`: all differentials zero.
pub fn abelian(n: usize) -> Dga {
    chevalley_eilenberg(&LieAlgebra::abelian(n)).expect("abelian algebra is Lie")
}

/// The minimal model `ℳ(n)` of the nilmanifold `M(n)`.
pub fn vn_model(n: usize) -> Result<Dga> {
    chevalley_eilenberg(&vn(n)?)
}

/// Adjoins a closed degree-1 generator (the model of `X × S¹`).
pub fn tensor_with_circle(d: &Dga) -> Result<Dga> {
    let name = format!("x{}", d.algebra().len() + 1);
    let name = d.algebra().fresh_name(&name);
    d.adjoin_closed(&name, 1, None)
}

/// Kodaira–Thurston model: `dx1 = dx2 = dx4 = 0`, `dx3 = x1∧x2`.
pub fn kodaira_thurston() -> Dga {
    let h = chevalley_eilenberg(&heisenberg()).expect("Heisenberg algebra is Lie");
    tensor_with_circle(&h).expect("fresh generator name")
}

/// Degree cap used by [`cpn`]: room for triple products of classes up to
/// the top degree `2m`.
pub fn cpn_default_cap(m: usize) -> u32 {
    4 * m as u32 + 2
}

/// Model of `ℂP^m`: `x` in degree 2, `y` in degree `2m+1`, `dy = x^{m+1}`.
pub fn cpn(m: usize) -> Result<Dga> {
    cpn_with_cap(m, cpn_default_cap(m))
}

pub fn cpn_with_cap(m: usize, cap: u32) -> Result<Dga> {
    if m < 1 {
        return Err(Error::BadParameter("cpn requires m >= 1".into()));
    }
    let m32 = m as u32;
    Dga::from_text(
        vec![
            GeneratorSpec::new("x", 2),
            GeneratorSpec::new("y", 2 * m32 + 1),
        ],
        &[("y", &format!("x^{}", m + 1))],
        Some(cap),
    )
}

/// Model of a point (no generators).
pub fn point() -> Dga {
    Dga::new(Arc::new(GradedAlgebra::new(Vec::new()).expect("empty")), Vec::new(), None)
        .expect("empty DGA")
}
