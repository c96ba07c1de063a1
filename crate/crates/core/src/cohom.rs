//! Cohomology of a DGA, degree by degree.
//!
//! In degree `q` the cocycles are `ker d_q` and the coboundaries are
//! `im d_{q-1}`, both stored as echelon subspaces of the slice coordinates.
//! Class representatives are canonical: reduced modulo coboundaries by the
//! pivot convention of [`Subspace::reduce`].

use serde::Serialize;

use crate::dga::Dga;
use crate::error::{Error, Result};
use crate::grade::Element;
use crate::qlin::{
    format_rational, is_zero_vector, kernel_basis, solve_any, QMatrix, QVector, Rational,
    Subspace,
};

#[derive(Clone, Debug)]
pub struct CohomologySpace {
    pub degree: u32,
    pub cocycles: Subspace,
    pub coboundaries: Subspace,
    /// One canonical cocycle per basis vector of the quotient.
    pub class_basis: Vec<QVector>,
}

impl CohomologySpace {
    pub fn betti(&self) -> usize {
        self.class_basis.len()
    }

    /// Coordinates of a cocycle's class in `class_basis`.
    pub fn class_coordinates(&self, z: &[Rational]) -> QVector {
        let h = self.class_basis.len();
        let mut cols = self.class_basis.clone();
        cols.extend(self.coboundaries.basis().iter().cloned());
        let m = QMatrix::from_columns(self.cocycles.ambient_dim(), &cols);
        let x = solve_any(&m, z).expect("cocycle lies in span of classes and coboundaries");
        x[..h].to_vec()
    }

    fn compute(dga: &Dga, q: u32) -> Result<CohomologySpace> {
        let cocycles = kernel_basis(dga.d_matrix(q)?);
        let coboundaries = if q == 0 {
            Subspace::zero(dga.slice_dim(0)?)
        } else {
            let m = dga.d_matrix(q - 1)?;
            Subspace::span(m.rows(), (0..m.cols()).map(|j| m.column(j)))
        };
        let mut class_basis = Vec::new();
        let mut seen = coboundaries.clone();
        for z in cocycles.basis() {
            if seen.contains(z) {
                continue;
            }
            class_basis.push(coboundaries.reduce(z));
            seen = seen.extend([z.clone()]);
        }
        Ok(CohomologySpace {
            degree: q,
            cocycles,
            coboundaries,
            class_basis,
        })
    }
}

impl Dga {
    /// Cached cohomology in degree `q ≤ degree_cap`.
    pub fn cohomology(&self, q: u32) -> Result<&CohomologySpace> {
        if q > self.degree_cap() {
            return Err(Error::CapExceeded {
                degree: q,
                cap: self.degree_cap(),
            });
        }
        if let Some(h) = self.cohom[q as usize].get() {
            return Ok(h);
        }
        let h = CohomologySpace::compute(self, q)?;
        Ok(self.cohom[q as usize].get_or_init(|| h))
    }
}

pub fn betti(dga: &Dga, q: u32) -> Result<usize> {
    Ok(dga.cohomology(q)?.betti())
}

/// Betti numbers in degrees `0..=max_degree`.
pub fn betti_profile(dga: &Dga, max_degree: u32) -> Result<Vec<usize>> {
    (0..=max_degree).map(|q| betti(dga, q)).collect()
}

/// A cohomology class, carried by a canonical cocycle representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomClass {
    pub degree: u32,
    pub representative: Element,
}

impl CohomClass {
    pub fn zero(dga: &Dga, degree: u32) -> Self {
        CohomClass {
            degree,
            representative: Element::zero(dga.algebra()),
        }
    }

    pub fn unit(dga: &Dga) -> Self {
        CohomClass {
            degree: 0,
            representative: Element::one(dga.algebra()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }
}

fn closed_coords(dga: &Dga, u: &Element, q: u32) -> Result<QVector> {
    let v = dga.coords(u, q)?;
    if !dga.differential(u).is_zero() {
        return Err(Error::NotClosed);
    }
    Ok(v)
}

/// Whether a closed element is a coboundary.
pub fn is_exact(dga: &Dga, u: &Element) -> Result<bool> {
    let Some(q) = u.degree() else {
        if u.is_zero() {
            return Ok(true);
        }
        return Err(Error::NotHomogeneous { expected: 0 });
    };
    let v = closed_coords(dga, u, q)?;
    Ok(dga.cohomology(q)?.coboundaries.contains(&v))
}

/// The canonical class of a closed homogeneous element of degree `q`.
pub fn class_of_degree(dga: &Dga, u: &Element, q: u32) -> Result<CohomClass> {
    let v = closed_coords(dga, u, q)?;
    let h = dga.cohomology(q)?;
    let rep = h.coboundaries.reduce(&v);
    Ok(CohomClass {
        degree: q,
        representative: dga.element(q, &rep)?,
    })
}

/// The canonical class of a nonzero closed homogeneous element.
pub fn class_of(dga: &Dga, u: &Element) -> Result<CohomClass> {
    let q = u.degree().ok_or(Error::NotHomogeneous { expected: 0 })?;
    class_of_degree(dga, u, q)
}

/// Coordinates of a class in the canonical class basis of its degree.
pub fn class_coords(dga: &Dga, a: &CohomClass) -> Result<QVector> {
    let v = closed_coords(dga, &a.representative, a.degree)?;
    Ok(dga.cohomology(a.degree)?.class_coordinates(&v))
}

/// Class-basis elements of degree `q`.
pub fn class_basis(dga: &Dga, q: u32) -> Result<Vec<CohomClass>> {
    let h = dga.cohomology(q)?;
    h.class_basis
        .iter()
        .map(|v| {
            Ok(CohomClass {
                degree: q,
                representative: dga.element(q, v)?,
            })
        })
        .collect()
}

/// Cup product of classes.
pub fn cup(dga: &Dga, a: &CohomClass, b: &CohomClass) -> Result<CohomClass> {
    let prod = a.representative.multiply(&b.representative)?;
    class_of_degree(dga, &prod, a.degree + b.degree)
}

/// Structure constants of `H*` in class-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingTable {
    pub betti: Vec<usize>,
    pub classes: Vec<ClassEntry>,
    pub ring: Vec<ProductEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub index: usize,
    pub degree: u32,
    pub representative: String,
}

/// `classes[a] ∪ classes[b]` expressed in the class basis of degree
/// `deg a + deg b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductEntry {
    pub a: usize,
    pub b: usize,
    pub degree: u32,
    pub product: Vec<String>,
}

impl RingTable {
    /// Product coordinates of global classes `a`, `b`, if tabulated.
    pub fn product(&self, a: usize, b: usize) -> Option<&[String]> {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.ring
            .iter()
            .find(|e| e.a == a && e.b == b)
            .map(|e| e.product.as_slice())
    }
}

/// Classes in degrees `0..=max_q`, numbered globally by degree then basis
/// position, and all products `a ∪ b` (`a ≤ b`) landing in degree `≤ cap`.
pub fn ring_table(dga: &Dga, max_q: u32) -> Result<RingTable> {
    let betti = betti_profile(dga, max_q)?;
    let mut classes = Vec::new();
    for q in 0..=max_q {
        classes.extend(class_basis(dga, q)?);
    }
    let entries = classes
        .iter()
        .enumerate()
        .map(|(index, c)| ClassEntry {
            index,
            degree: c.degree,
            representative: c.representative.to_string(),
        })
        .collect();
    let mut ring = Vec::new();
    for (i, a) in classes.iter().enumerate() {
        for (j, b) in classes.iter().enumerate().skip(i) {
            let degree = a.degree + b.degree;
            if degree > dga.degree_cap() {
                continue;
            }
            let prod = cup(dga, a, b)?;
            let coords = class_coords(dga, &prod)?;
            ring.push(ProductEntry {
                a: i,
                b: j,
                degree,
                product: coords.iter().map(format_rational).collect(),
            });
        }
    }
    Ok(RingTable {
        betti,
        classes: entries,
        ring,
    })
}

/// Whether a coordinate vector of degree `q` is a cocycle.
pub fn is_cocycle(dga: &Dga, v: &[Rational], q: u32) -> Result<bool> {
    Ok(is_zero_vector(&dga.d_matrix(q)?.mul_vec(v)))
}
