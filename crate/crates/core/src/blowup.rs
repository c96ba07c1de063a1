//! Projectivizations, blow-up Betti numbers, and the Massey products in the
//! model of a projectivized normal bundle.
//!
//! The projectivization of a rank-`k` bundle over `Y` is modeled by
//! `M_Y ⊗ Λ(x, y)` with `|x| = 2`, `|y| = 2k − 1` and
//! `dy = x^k + c_1 x^{k−1} + … + c_k`.

use std::sync::Arc;

use serde::Serialize;

use crate::cohom::{betti, is_exact, CohomClass};
use crate::dga::Dga;
use crate::error::{Error, Result};
use crate::grade::{Element, GeneratorSpec};
use crate::massey::{triple_massey_modulo, IndeterminacyFactor, MasseyReport, MasseyVerdict};
use crate::models::{kodaira_thurston, vn_model};
use crate::qlin::Rational;

#[derive(Clone, Debug)]
pub struct ProjectivizationModel {
    pub base: Dga,
    pub k: u32,
    /// `c_1, …, c_k` as elements of the base.
    pub chern: Vec<Element>,
    pub total: Dga,
    /// Name of the degree-2 fiber generator in `total`.
    pub x: String,
    /// Name of the degree-`(2k−1)` generator in `total`.
    pub y: String,
}

fn check_chern(base: &Dga, k: u32, chern: &[Element]) -> Result<Vec<Element>> {
    if chern.is_empty() {
        return Ok((0..k).map(|_| Element::zero(base.algebra())).collect());
    }
    if chern.len() != k as usize {
        return Err(Error::ChernCount {
            expected: k as usize,
            got: chern.len(),
        });
    }
    let mut out = Vec::with_capacity(chern.len());
    for (j, c) in chern.iter().enumerate() {
        let index = j + 1;
        let expected = 2 * index as u32;
        let c = c.embed(base.algebra())?;
        if !c.is_zero() && !c.is_homogeneous_of(expected) {
            return Err(Error::ChernWrongDegree { index, expected });
        }
        if !base.differential(&c).is_zero() {
            return Err(Error::ChernNotClosed(index));
        }
        out.push(c);
    }
    Ok(out)
}

/// Default cap of the total model: the base cap plus the degree `2k` of the
/// relation.
pub fn projectivization_default_cap(base: &Dga, k: u32) -> u32 {
    base.degree_cap() + 2 * k
}

/// `P(E) → Y` for a rank-`k` bundle with Chern classes `chern` (empty means
/// all zero).
pub fn projectivize(base: &Dga, k: u32, chern: &[Element]) -> Result<ProjectivizationModel> {
    if k < 2 {
        return Err(Error::BadParameter("projectivization requires fiber rank k >= 2".into()));
    }
    projectivize_with_cap(base, k, chern, projectivization_default_cap(base, k))
}

pub fn projectivize_with_cap(
    base: &Dga,
    k: u32,
    chern: &[Element],
    cap: u32,
) -> Result<ProjectivizationModel> {
    if k < 2 {
        return Err(Error::BadParameter("projectivization requires fiber rank k >= 2".into()));
    }
    let chern = check_chern(base, k, chern)?;
    let balg = base.algebra();
    let x = balg.fresh_name("x");
    let y = balg.fresh_name("y");
    let alg = Arc::new(balg.extended(vec![
        GeneratorSpec::new(x.clone(), 2),
        GeneratorSpec::new(y.clone(), 2 * k - 1),
    ])?);
    let mut d = Vec::with_capacity(alg.len());
    for (i, g) in balg.generators().iter().enumerate() {
        d.push((g.name.clone(), base.d_generator(i).embed(&alg)?));
    }
    let xe = Element::generator(&alg, &x)?;
    let mut dy = xe.pow(k);
    for (j, c) in chern.iter().enumerate() {
        let term = &c.embed(&alg)? * &xe.pow(k - 1 - j as u32);
        dy = &dy + &term;
    }
    d.push((y.clone(), dy));
    let total = Dga::new(alg, d, Some(cap))?;
    Ok(ProjectivizationModel {
        base: base.clone(),
        k,
        chern,
        total,
        x,
        y,
    })
}

impl ProjectivizationModel {
    /// The class `a = [x]`.
    pub fn fiber_class(&self) -> CohomClass {
        CohomClass {
            degree: 2,
            representative: Element::generator(self.total.algebra(), &self.x).expect("fiber generator"),
        }
    }

    /// `x^k + c_1 x^{k−1} + … + c_k`.
    pub fn relation(&self) -> Element {
        let yi = self.total.algebra().index_of(&self.y).expect("y generator");
        self.total.d_generator(yi).clone()
    }

    pub fn relation_holds(&self) -> Result<bool> {
        is_exact(&self.total, &self.relation())
    }

    /// A base element viewed in the total model.
    pub fn lift(&self, u: &Element) -> Result<Element> {
        u.embed(self.total.algebra())
    }

    pub fn leray_hirsch_betti(&self, q: u32) -> Result<usize> {
        leray_hirsch_betti(&self.base, self.k, q)
    }

    pub fn chern_strings(&self) -> Vec<String> {
        self.chern.iter().map(|c| c.to_string()).collect()
    }
}

/// `Σ_{j=0}^{k−1} b_{q−2j}(base)`.
pub fn leray_hirsch_betti(base: &Dga, k: u32, q: u32) -> Result<usize> {
    let mut sum = 0;
    for j in 0..k {
        if 2 * j > q {
            break;
        }
        let d = q - 2 * j;
        sum += if d <= base.degree_cap() {
            betti(base, d)?
        } else if base.algebra().has_even_generators() {
            return Err(Error::CapExceeded {
                degree: d,
                cap: base.degree_cap(),
            });
        } else {
            0
        };
    }
    Ok(sum)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectivizationReport {
    pub k: u32,
    pub chern: Vec<String>,
    pub generators: Vec<GeneratorSpec>,
    pub relation: String,
    pub relation_holds: bool,
    pub betti: Vec<usize>,
    pub leray_hirsch: Vec<usize>,
}

pub fn projectivization_report(p: &ProjectivizationModel, max_degree: u32) -> Result<ProjectivizationReport> {
    let top = max_degree.min(p.total.degree_cap());
    Ok(ProjectivizationReport {
        k: p.k,
        chern: p.chern_strings(),
        generators: p.total.algebra().generators().to_vec(),
        relation: p.relation().to_string(),
        relation_holds: p.relation_holds()?,
        betti: (0..=top).map(|q| betti(&p.total, q)).collect::<Result<_>>()?,
        leray_hirsch: (0..=top).map(|q| p.leray_hirsch_betti(q)).collect::<Result<_>>()?,
    })
}

/// Betti numbers of the blow-up of `ℂP^N` along `Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupBettiProfile {
    #[serde(rename = "N")]
    pub n: u32,
    pub k: u32,
    pub y_betti: Vec<usize>,
    pub betti: Vec<usize>,
    pub euler: i64,
    pub duality: bool,
    pub euler_identity: bool,
}

fn euler(b: &[usize]) -> i64 {
    b.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

fn is_palindrome(b: &[usize]) -> bool {
    b.iter().eq(b.iter().rev())
}

/// `b_i = b_i(ℂP^N) + Σ_{j=1}^{k−1} b_{i−2j}(Y)` with `k = N − dim Y / 2`.
pub fn blowup_betti(n: u32, y_betti: &[usize]) -> Result<BlowupBettiProfile> {
    if y_betti.is_empty() || (y_betti.len() - 1) % 2 == 1 || !is_palindrome(y_betti) {
        return Err(Error::InvalidBettiProfile(y_betti.to_vec()));
    }
    let dim_y = (y_betti.len() - 1) as u32;
    if n < dim_y / 2 + 2 {
        return Err(Error::BadCodimension(format!(
            "N = {n} and dim Y = {dim_y} give k = N - dim Y/2 < 2"
        )));
    }
    let k = n - dim_y / 2;
    let mut betti = vec![0usize; 2 * n as usize + 1];
    for (i, b) in betti.iter_mut().enumerate() {
        if i % 2 == 0 {
            *b += 1;
        }
        for j in 1..k as usize {
            if let Some(&y) = i.checked_sub(2 * j).and_then(|d| y_betti.get(d)) {
                *b += y;
            }
        }
    }
    let e = euler(&betti);
    Ok(BlowupBettiProfile {
        n,
        k,
        y_betti: y_betti.to_vec(),
        duality: is_palindrome(&betti),
        euler_identity: e == (n as i64 + 1) + (k as i64 - 1) * euler(y_betti),
        euler: e,
        betti,
    })
}

/// A triple Massey product survives a connected sum of `dim`-manifolds
/// when its degree is at most `dim − 3`.
pub fn massey_survives_connected_sum(q: u32, dim: u32) -> bool {
    q + 3 <= dim
}

/// The symplectic targets of the degree-7 product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LemmaTarget {
    /// The Kodaira–Thurston manifold, `v = x1 x4 + x2 x3`.
    #[serde(rename = "kt")]
    KodairaThurston,
    /// `M(4)`, `v = 3 x1 x4 + x2 x3`.
    #[serde(rename = "m4")]
    M4,
}

impl LemmaTarget {
    pub fn base(self) -> Dga {
        match self {
            LemmaTarget::KodairaThurston => kodaira_thurston(),
            LemmaTarget::M4 => vn_model(4).expect("n = 4"),
        }
    }

    /// The coefficient `A` in `v = A·x1 x4 + x2 x3`.
    pub fn coefficient(self) -> i64 {
        match self {
            LemmaTarget::KodairaThurston => 1,
            LemmaTarget::M4 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LemmaTarget::KodairaThurston => "kt",
            LemmaTarget::M4 => "m4",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LemmaCheck {
    pub which: u32,
    pub base: String,
    pub k: u32,
    pub chern: Vec<String>,
    /// Whether `m` and `k` lie in the range where nontriviality is expected.
    pub hypotheses_met: bool,
    /// Whether the two adjacent cup products vanish in cohomology.
    pub cups_vanish: bool,
    pub inputs: [String; 3],
    pub verdict: MasseyVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: u32,
    pub base: String,
    pub k: u32,
    pub chern: Vec<String>,
    pub hypotheses_met: bool,
    pub cups_vanish: bool,
    #[serde(flatten)]
    pub verdict: MasseyReport,
}

impl LemmaCheck {
    pub fn nontrivial(&self) -> bool {
        self.verdict.nontrivial
    }

    pub fn report(&self) -> LemmaReport {
        LemmaReport {
            lemma: self.which,
            base: self.base.clone(),
            k: self.k,
            chern: self.chern.clone(),
            hypotheses_met: self.hypotheses_met,
            cups_vanish: self.cups_vanish,
            verdict: self.verdict.report(),
        }
    }
}

fn class(degree: u32, representative: Element) -> CohomClass {
    CohomClass {
        degree,
        representative,
    }
}

/// Base model of the first computation: `CE(V_{2m})`.
pub fn lemma1_base(m: usize) -> Result<Dga> {
    vn_model(2 * m)
}

/// `⟨[x·x2], [x·x1], [x·x2]⟩` in `P(E) → M(2m)` modulo `[x·x2] ∪ H^5`.
pub fn lemma1_check(m: usize, k: u32, chern: &[Element]) -> Result<LemmaCheck> {
    let base = lemma1_base(m)?;
    let cap = projectivization_default_cap(&base, k.max(2)).max(8);
    let p = projectivize_with_cap(&base, k, chern, cap)?;
    let t = &p.total;
    let a = t.parse(&format!("{}*x2", p.x))?;
    let b = t.parse(&format!("{}*x1", p.x))?;
    let cups_vanish = is_exact(t, &(&a * &b))? && is_exact(t, &(&b * &a))?;
    let (ca, cb) = (class(3, a), class(3, b));
    let factors = [IndeterminacyFactor {
        class: ca.clone(),
        degree: 5,
    }];
    let verdict = triple_massey_modulo(t, &ca, &cb, &ca, &factors)?;
    Ok(LemmaCheck {
        which: 1,
        base: format!("vn{}", 2 * m),
        k,
        chern: p.chern_strings(),
        hypotheses_met: m >= 3 && k >= 4,
        cups_vanish,
        inputs: [&ca, &cb, &ca].map(|c| c.representative.to_string()),
        verdict,
    })
}

/// `⟨[x·x2], v, [x·x2]⟩` in `P(E) → Y` modulo `[x·x2] ∪ H^4`, with
/// `v = A·x1 x4 + x2 x3`.
pub fn lemma2_check(target: LemmaTarget, k: u32, chern: &[Element]) -> Result<LemmaCheck> {
    lemma2_check_scaled(target, k, chern, &Rational::from_integer(1.into()))
}

/// As [`lemma2_check`] with `v` replaced by `scale · v`.
pub fn lemma2_check_scaled(
    target: LemmaTarget,
    k: u32,
    chern: &[Element],
    scale: &Rational,
) -> Result<LemmaCheck> {
    if num_traits::Zero::is_zero(scale) {
        return Err(Error::BadParameter("scale must be nonzero".into()));
    }
    let base = target.base();
    let cap = projectivization_default_cap(&base, k.max(2)).max(8);
    let p = projectivize_with_cap(&base, k, chern, cap)?;
    let t = &p.total;
    let a = t.parse(&format!("{}*x2", p.x))?;
    let v = t
        .parse(&format!("{}*x1*x4 + x2*x3", target.coefficient()))?
        .scale(scale);
    let cups_vanish = is_exact(t, &(&a * &v))? && is_exact(t, &(&v * &a))?;
    let (ca, cv) = (class(3, a), class(2, v));
    let factors = [IndeterminacyFactor {
        class: ca.clone(),
        degree: 4,
    }];
    let verdict = triple_massey_modulo(t, &ca, &cv, &ca, &factors)?;
    Ok(LemmaCheck {
        which: 2,
        base: target.name().to_string(),
        k,
        chern: p.chern_strings(),
        hypotheses_met: k >= 3,
        cups_vanish,
        inputs: [&ca, &cv, &ca].map(|c| c.representative.to_string()),
        verdict,
    })
}
