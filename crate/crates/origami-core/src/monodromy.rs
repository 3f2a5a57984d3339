//! Dehn multitwists in periodic directions and their homology matrices.
//!
//! In direction `d` with cylinders of circumference `w_c` and height `h_c`,
//! the smallest affine shear fixing the surface is
//! `k = lcm_c(w_c / gcd(w_c, h_c))`, twisting cylinder `c` exactly
//! `t_c = k·h_c/w_c` times. On homology the multitwist acts by
//!
//! `γ ↦ γ + ε Σ_c t_c ⟨waist_c, γ⟩ waist_c`
//!
//! with `ε = +1` except in the vertical direction, where the twist with
//! nonnegative derivative entries is the opposite one (`ε = -1`, derivative
//! `[[1,0],[k,1]]`). The sign convention is pinned by the twist-equation
//! tests on the bundled surfaces.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::chain::EdgeChain;
use crate::cylinder::Cylinder;
use crate::error::{internal, Error};
use crate::homology::{Homology, PerpBasis, PerpOrder};
use crate::matrix::QMat;
use crate::sl2z::{parabolic, Direction, Sl2zMatrix};
use crate::{rat, Rat};

/// A parabolic multitwist with its exact homology data.
#[derive(Clone, Debug)]
pub struct MultitwistAction {
    pub direction: Direction,
    pub derivative: Sl2zMatrix,
    /// Shear `k` of the derivative.
    pub shear: i64,
    /// Twists per cylinder, in the cylinders' canonical order.
    pub twist_counts: Vec<i64>,
    pub cylinders: Vec<Cylinder>,
    /// Matrix on `H_1` in the ambient basis (columns are images).
    pub matrix_h1: QMat,
    /// The perp basis used for the restricted matrix.
    pub perp_basis: PerpBasis,
    /// Matrix of the restriction to `ker(holonomy)` in `perp_basis`.
    pub matrix_perp: QMat,
    sign: i64,
}

impl MultitwistAction {
    /// Image of an arbitrary cycle under the twist.
    pub fn apply_chain(&self, chain: &EdgeChain, hom: &Homology) -> EdgeChain {
        twist_chain(chain, &self.cylinders, &self.twist_counts, self.sign, hom)
    }

    /// The action on cohomology in the dual basis: `(M⁻¹)ᵗ`.
    pub fn cohomology_h1(&self) -> Result<QMat, Error> {
        inverse_transpose(&self.matrix_h1)
    }

    pub fn cohomology_perp(&self) -> Result<QMat, Error> {
        inverse_transpose(&self.matrix_perp)
    }
}

fn inverse_transpose(m: &QMat) -> Result<QMat, Error> {
    let inv = m
        .inverse()
        .ok_or_else(|| internal("twist matrix is singular"))?;
    Ok(inv.transpose())
}

fn twist_chain(
    chain: &EdgeChain,
    cyls: &[Cylinder],
    twists: &[i64],
    sign: i64,
    hom: &Homology,
) -> EdgeChain {
    let mut out = chain.clone();
    for (cyl, &t) in cyls.iter().zip(twists) {
        let pairing = hom.pair(cyl.waist(), chain);
        if pairing.is_zero() {
            continue;
        }
        let factor = &pairing * &rat(sign * t);
        out = out.add(&cyl.waist().scale(&factor));
    }
    out
}

/// The multitwist of `o` in direction `dir`.
pub fn multitwist(
    hom: &Homology,
    dir: Direction,
    order: PerpOrder,
) -> Result<MultitwistAction, Error> {
    let o = hom.surface();
    let cyls = crate::cylinder::cylinders(o, dir)?;
    let mut k: i64 = 1;
    for c in &cyls {
        let w = c.circumference as i64;
        let h = c.height as i64;
        k = lcm(k, w / gcd(w, h));
    }
    let twists: Vec<i64> = cyls
        .iter()
        .map(|c| k * c.height as i64 / c.circumference as i64)
        .collect();
    if twists
        .iter()
        .zip(&cyls)
        .any(|(&t, c)| t * c.circumference as i64 != k * c.height as i64)
    {
        return Err(internal("twist counts are not integral"));
    }
    let sign = if dir.is_vertical() { -1 } else { 1 };
    let derivative = parabolic(dir, k, sign)?;

    // full H1 matrix, columns = images of the basis
    let rank = hom.rank();
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(rank);
    for b in hom.basis() {
        let img = twist_chain(b, &cyls, &twists, sign, hom);
        cols.push(hom.coords(&img)?);
    }
    let matrix_h1 = QMat::from_columns(&cols);

    // the twist must preserve the intersection form
    let gram = hom.gram();
    if &(&matrix_h1.transpose() * gram) * &matrix_h1 != *gram {
        return Err(internal("twist does not preserve the intersection form"));
    }
    // holonomy equivariance: hol(Mγ) = dM·hol(γ)
    for b in hom.basis() {
        let img = twist_chain(b, &cyls, &twists, sign, hom);
        let (hx, hy) = b.holonomy();
        let (ix, iy) = img.holonomy();
        let ex = &rat(derivative.a) * &hx + &rat(derivative.b) * &hy;
        let ey = &rat(derivative.c) * &hx + &rat(derivative.d) * &hy;
        if ix != ex || iy != ey {
            return Err(internal("twist does not cover its derivative on the torus"));
        }
    }

    // restriction to the perp subspace
    let perp_basis = hom.perp_basis(order)?;
    let matrix_perp = if perp_basis.chains.is_empty() {
        QMat::zeros(0, 0)
    } else {
        let pb_mat = QMat::from_columns(&perp_basis.coords);
        let mut img_cols: Vec<Vec<Rat>> = Vec::new();
        for c in &perp_basis.chains {
            let img = twist_chain(c, &cyls, &twists, sign, hom);
            img_cols.push(hom.coords(&img)?);
        }
        let img_mat = QMat::from_columns(&img_cols);
        pb_mat
            .solve(&img_mat)
            .ok_or_else(|| internal("twist does not preserve ker(holonomy)"))?
    };

    Ok(MultitwistAction {
        direction: dir,
        derivative,
        shear: k,
        twist_counts: twists,
        cylinders: cyls,
        matrix_h1,
        perp_basis,
        matrix_perp,
        sign,
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::origami::Origami;

    fn hom(text: &str) -> Homology {
        Homology::new(&Origami::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn torus_horizontal_twist() {
        let hom = hom("h=(); v=(); n=1");
        let mt = multitwist(&hom, Direction::new(1, 0).unwrap(), PerpOrder::Canonical).unwrap();
        assert_eq!(mt.shear, 1);
        assert_eq!(mt.derivative, Sl2zMatrix::new(1, 1, 0, 1).unwrap());
        // in the (x, y) basis: x ↦ x, y ↦ y + x
        let rows = mt.matrix_h1.to_i64_rows().unwrap();
        assert_eq!(rows, vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(mt.matrix_perp.nrows(), 0);
    }

    #[test]
    fn mstar_shears() {
        let hom = hom("h=(2,3)(4,5,6); v=(1,4,2)(3,5); n=6");
        let a = multitwist(&hom, Direction::new(1, 0).unwrap(), PerpOrder::Canonical).unwrap();
        assert_eq!(a.shear, 6);
        assert_eq!(a.twist_counts, vec![6, 3, 2]);
        assert_eq!(a.derivative, Sl2zMatrix::new(1, 6, 0, 1).unwrap());
        let b = multitwist(&hom, Direction::new(0, 1).unwrap(), PerpOrder::Canonical).unwrap();
        assert_eq!(b.derivative, Sl2zMatrix::new(1, 0, 6, 1).unwrap());
        let c = multitwist(&hom, Direction::new(1, 1).unwrap(), PerpOrder::Canonical).unwrap();
        assert_eq!(c.shear, 3);
        assert_eq!(c.derivative, Sl2zMatrix::new(-2, 3, -3, 4).unwrap());
    }

    #[test]
    fn mstarstar_shears() {
        let hom = hom("h=(2,3)(4,5,6); v=(1,2)(3,4); n=6");
        let e = multitwist(&hom, Direction::new(0, 1).unwrap(), PerpOrder::Canonical).unwrap();
        assert_eq!(e.shear, 2);
        assert_eq!(e.derivative, Sl2zMatrix::new(1, 0, 2, 1).unwrap());
        assert_eq!(e.twist_counts, vec![4, 1, 1]);
        let f = multitwist(&hom, Direction::new(2, 1).unwrap(), PerpOrder::Canonical).unwrap();
        assert_eq!(f.shear, 4);
        assert_eq!(f.derivative, Sl2zMatrix::new(-7, 16, -4, 9).unwrap());
    }

    #[test]
    fn unipotence() {
        let hom = hom("h=(2,3)(4,5,6); v=(1,4,2)(3,5); n=6");
        for (p, q) in [(1i64, 0i64), (0, 1), (1, 1), (1, -1), (2, 1)] {
            let mt = multitwist(&hom, Direction::new(p, q).unwrap(), PerpOrder::Canonical).unwrap();
            let m = &mt.matrix_h1;
            let n = m.nrows();
            let nilpotent = &(m - &QMat::identity(n)).pow(n);
            assert!(nilpotent.is_zero(), "direction ({p},{q})");
        }
    }
}
