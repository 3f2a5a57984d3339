//! Integral first homology of an origami with its intersection form.
//!
//! Cycles of the 1-skeleton are generated by fundamental cycles of a spanning
//! tree (one per non-tree edge, with `{0,±1}` coefficients), in which basis a
//! cycle's coordinates are simply its non-tree-edge coefficients. The lattice
//! of square boundaries is saturated in the cycle lattice (the quotient is
//! `H_1` of a closed orientable surface, hence torsion free), so an integer
//! row echelon of the boundary matrix yields a unimodular change of
//! coordinates in which the quotient is read off the last `2g` entries.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::chain::EdgeChain;
use crate::cylinder::{cylinders, Cylinder};
use crate::error::{internal, Error};
use crate::intersection::Stars;
use crate::matrix::{integer_row_echelon, QMat};
use crate::origami::Origami;
use crate::sl2z::Direction;
use crate::{rat, Int, Rat};

/// A homology class, carried by an explicit edge chain on a specific surface.
#[derive(Clone, Debug)]
pub struct CycleClass {
    pub surface: Origami,
    pub chain: EdgeChain,
}

/// The homology context of one origami: basis, coordinates, pairing.
pub struct Homology {
    o: Origami,
    stars: Stars,
    genus: usize,
    /// non-tree edge indices, ascending
    fund_edges: Vec<usize>,
    /// unimodular `u` with `u · (boundary matrix)` in staircase form
    u: QMat,
    /// rank of the boundary lattice (`n - 1`)
    boundary_rank: usize,
    basis: Vec<EdgeChain>,
    gram: QMat,
}

/// How the `H_1^perp` basis was constructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PerpBasisKind {
    /// `σ̄_i = σ_i - (len σ_i / len σ_0)·σ_0` and likewise for `ζ̄_i`, taken
    /// from the horizontal and vertical waist curves (requires those waists
    /// to span `H_1`).
    CanonicalWaists,
    /// Deterministic echelon basis of `ker(holonomy)`.
    Echelon,
}

/// Ordering rule for the waist systems backing the perp basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PerpOrder {
    /// Ascending circumference, ties by smallest square index.
    Canonical,
    /// Ascending circumference, but a circumference tie is broken so that
    /// cylinders sharing a square with the shortest cylinder of the other
    /// direction come last (then by smallest square index). This matches how
    /// the bundled genus-3 surfaces' vertical waists are traditionally
    /// labeled.
    PaperTies,
}

/// A basis of the kernel of the holonomy map inside `H_1`.
#[derive(Clone, Debug)]
pub struct PerpBasis {
    pub kind: PerpBasisKind,
    pub labels: Vec<String>,
    pub chains: Vec<EdgeChain>,
    /// coordinates of each basis vector in the ambient `H_1` basis
    pub coords: Vec<Vec<Rat>>,
    pub gram: QMat,
}

impl Homology {
    pub fn new(o: &Origami) -> Result<Homology, Error> {
        let n = o.squares();
        let stars = Stars::new(o);
        let n_vertices = stars.n_vertices();
        let genus = o.stratum()?.genus;

        // spanning tree over the vertex graph, edges tried in ascending index
        let (tail, head) = edge_endpoints(o, &stars.vertex_of);
        let mut in_tree = vec![false; 2 * n];
        let mut reached = vec![false; n_vertices];
        let mut path = vec![EdgeChain::zero(n); n_vertices]; // chain root → w
        reached[0] = true;
        let mut grew = true;
        while grew {
            grew = false;
            for e in 0..2 * n {
                let (t, h) = (tail[e], head[e]);
                if reached[t] && !reached[h] {
                    in_tree[e] = true;
                    reached[h] = true;
                    let mut p = path[t].clone();
                    add_edge(&mut p, e, n, 1);
                    path[h] = p;
                    grew = true;
                } else if reached[h] && !reached[t] {
                    in_tree[e] = true;
                    reached[t] = true;
                    let mut p = path[h].clone();
                    add_edge(&mut p, e, n, -1);
                    path[t] = p;
                    grew = true;
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(internal("1-skeleton is disconnected"));
        }

        let fund_edges: Vec<usize> = (0..2 * n).filter(|&e| !in_tree[e]).collect();
        let fund_cycles: Vec<EdgeChain> = fund_edges
            .iter()
            .map(|&e| {
                let mut c = path[tail[e]].clone();
                add_edge(&mut c, e, n, 1);
                c = c.sub(&path[head[e]]);
                c
            })
            .collect();
        let z = fund_edges.len();
        if z != 2 * n - (n_vertices - 1) {
            return Err(internal("wrong number of fundamental cycles"));
        }

        // boundary matrix in fundamental coordinates
        let faces: Vec<Vec<Int>> = (0..n)
            .map(|i| {
                let b = EdgeChain::square_boundary(o, i);
                fund_edges
                    .iter()
                    .map(|&e| b.coeff(e).to_integer())
                    .collect::<Vec<Int>>()
            })
            .collect();
        // columns = faces: build z×n matrix
        let m: Vec<Vec<Int>> = (0..z)
            .map(|r| (0..n).map(|c| faces[c][r].clone()).collect())
            .collect();
        let (u_int, echelon) = integer_row_echelon(&m);
        let boundary_rank = echelon
            .iter()
            .filter(|row| row.iter().any(|x| !x.is_zero()))
            .count();
        if boundary_rank != n - 1 {
            return Err(internal("boundary lattice has unexpected rank"));
        }
        if z - boundary_rank != 2 * genus {
            return Err(internal("H1 rank does not match the genus"));
        }

        let u = QMat::from_fn(z, z, |i, j| Rat::from_integer(u_int[i][j].clone()));
        let u_inv = u
            .inverse()
            .ok_or_else(|| internal("echelon transform is singular"))?;
        if !u_inv.is_integral() {
            return Err(internal("echelon transform is not unimodular"));
        }

        let basis: Vec<EdgeChain> = (0..2 * genus)
            .map(|j| {
                let mut c = EdgeChain::zero(n);
                #[allow(clippy::needless_range_loop)]
                for k in 0..z {
                    let coef = u_inv.get(k, boundary_rank + j);
                    if !coef.is_zero() {
                        c = c.add(&fund_cycles[k].scale(coef));
                    }
                }
                c
            })
            .collect();

        let gram = QMat::from_fn(2 * genus, 2 * genus, |i, j| {
            stars.pair(&basis[i], &basis[j])
        });
        // the intersection form on an integral H1 basis must be unimodular
        if !gram.is_integral() {
            return Err(internal("intersection gram matrix is not integral"));
        }
        if genus > 0 && gram.det().abs() != rat(1) {
            return Err(internal("intersection gram matrix is not unimodular"));
        }
        for i in 0..2 * genus {
            for j in 0..2 * genus {
                if *gram.get(i, j) != -gram.get(j, i).clone() {
                    return Err(internal("intersection gram matrix is not antisymmetric"));
                }
            }
        }

        Ok(Homology {
            o: o.clone(),
            stars,
            genus,
            fund_edges,
            u,
            boundary_rank,
            basis,
            gram,
        })
    }

    pub fn surface(&self) -> &Origami {
        &self.o
    }

    pub fn stars(&self) -> &Stars {
        &self.stars
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    /// Integral basis cycles of `H_1`.
    pub fn basis(&self) -> &[EdgeChain] {
        &self.basis
    }

    /// Intersection numbers of the basis, `gram[i][j] = ⟨b_i, b_j⟩`.
    pub fn gram(&self) -> &QMat {
        &self.gram
    }

    pub fn is_cycle(&self, chain: &EdgeChain) -> bool {
        chain
            .boundary(&self.o, &self.stars.vertex_of, self.stars.n_vertices())
            .iter()
            .all(|f| f.is_zero())
    }

    pub fn cycle(&self, chain: EdgeChain) -> Result<CycleClass, Error> {
        if chain.squares() != self.o.squares() {
            return Err(Error::SurfaceMismatch);
        }
        if !self.is_cycle(&chain) {
            return Err(Error::BadMatrix(String::from("chain is not closed")));
        }
        Ok(CycleClass {
            surface: self.o.clone(),
            chain,
        })
    }

    /// Coordinates of a cycle in the `H_1` basis (exact, deterministic).
    pub fn coords(&self, chain: &EdgeChain) -> Result<Vec<Rat>, Error> {
        if !self.is_cycle(chain) {
            return Err(internal("coords of a non-closed chain"));
        }
        let f: Vec<Rat> = self
            .fund_edges
            .iter()
            .map(|&e| chain.coeff(e).clone())
            .collect();
        let y = self.u.mul_vec(&f);
        Ok(y[self.boundary_rank..].to_vec())
    }

    pub fn class_from_coords(&self, coords: &[Rat]) -> EdgeChain {
        assert_eq!(coords.len(), self.rank());
        let mut c = EdgeChain::zero(self.o.squares());
        for (j, coef) in coords.iter().enumerate() {
            if !coef.is_zero() {
                c = c.add(&self.basis[j].scale(coef));
            }
        }
        c
    }

    pub fn same_class(&self, a: &EdgeChain, b: &EdgeChain) -> Result<bool, Error> {
        Ok(self.coords(a)? == self.coords(b)?)
    }

    /// `⟨c1, c2⟩`, rejecting cycles from another surface.
    pub fn intersection(&self, c1: &CycleClass, c2: &CycleClass) -> Result<Rat, Error> {
        if c1.surface != self.o || c2.surface != self.o {
            return Err(Error::SurfaceMismatch);
        }
        Ok(self.stars.pair(&c1.chain, &c2.chain))
    }

    /// Raw pairing on chains (assumed to live on this surface).
    pub fn pair(&self, c1: &EdgeChain, c2: &EdgeChain) -> Rat {
        self.stars.pair(c1, c2)
    }

    /// Horizontal and vertical cylinders with the tie-break rule applied.
    pub fn waist_systems(&self, order: PerpOrder) -> Result<(Vec<Cylinder>, Vec<Cylinder>), Error> {
        let horizontal = cylinders(&self.o, Direction::new(1, 0)?)?;
        let vertical = cylinders(&self.o, Direction::new(0, 1)?)?;
        match order {
            PerpOrder::Canonical => Ok((horizontal, vertical)),
            PerpOrder::PaperTies => {
                let reorder = |cyls: &[Cylinder], other_first: &Cylinder| {
                    let mut indexed: Vec<(usize, &Cylinder)> = cyls.iter().enumerate().collect();
                    indexed.sort_by_key(|(idx, c)| {
                        let shares =
                            c.squares.iter().any(|s| other_first.squares.contains(s)) as usize;
                        (c.circumference, shares, c.squares[0], *idx)
                    });
                    indexed
                        .into_iter()
                        .map(|(_, c)| c.clone())
                        .collect::<Vec<_>>()
                };
                let h2 = reorder(&horizontal, &vertical[0]);
                let v2 = reorder(&vertical, &horizontal[0]);
                Ok((h2, v2))
            }
        }
    }

    /// Basis of `ker(holonomy) ⊂ H_1`, of rank `2g - 2`.
    ///
    /// When the horizontal and vertical waists span `H_1` the basis is the
    /// canonical `σ̄_i, ζ̄_i` system; otherwise a deterministic echelon basis
    /// of the kernel is returned.
    pub fn perp_basis(&self, order: PerpOrder) -> Result<PerpBasis, Error> {
        let g = self.genus;
        let expected = 2 * g - 2;
        let (hcyl, vcyl) = self.waist_systems(order)?;

        // canonical construction when the waists span H1
        if (hcyl.len() - 1) + (vcyl.len() - 1) == expected {
            let mut waist_coords: Vec<Vec<Rat>> = Vec::new();
            for c in hcyl.iter().chain(vcyl.iter()) {
                waist_coords.push(self.coords(c.waist())?);
            }
            let wm = QMat::from_columns(&waist_coords);
            if wm.rank() == 2 * g {
                let mut labels = Vec::new();
                let mut chains = Vec::new();
                let build = |cyls: &[Cylinder],
                             tag: &str,
                             labels: &mut Vec<String>,
                             chains: &mut Vec<EdgeChain>| {
                    let base = &cyls[0];
                    let base_len = rat(base.circumference as i64);
                    for (i, c) in cyls.iter().enumerate().skip(1) {
                        let ratio = rat(c.circumference as i64) / &base_len;
                        chains.push(c.waist().sub(&base.waist().scale(&ratio)));
                        labels.push(format!("{tag}bar{i}"));
                    }
                };
                build(&hcyl, "sigma", &mut labels, &mut chains);
                build(&vcyl, "zeta", &mut labels, &mut chains);
                return self.finish_perp(PerpBasisKind::CanonicalWaists, labels, chains, expected);
            }
        }

        // echelon fallback: kernel of the holonomy map in basis coordinates
        let hol = QMat::from_fn(2, 2 * g, |r, j| {
            let (hx, hy) = self.basis[j].holonomy();
            if r == 0 {
                hx
            } else {
                hy
            }
        });
        let kernel = hol.nullspace();
        let chains: Vec<EdgeChain> = kernel
            .iter()
            .map(|coords| self.class_from_coords(coords))
            .collect();
        let labels = (1..=chains.len()).map(|i| format!("p{i}")).collect();
        self.finish_perp(PerpBasisKind::Echelon, labels, chains, expected)
    }

    fn finish_perp(
        &self,
        kind: PerpBasisKind,
        labels: Vec<String>,
        chains: Vec<EdgeChain>,
        expected: usize,
    ) -> Result<PerpBasis, Error> {
        if chains.len() != expected {
            return Err(internal("perp basis has wrong size"));
        }
        let mut coords = Vec::with_capacity(chains.len());
        for c in &chains {
            let (hx, hy) = c.holonomy();
            if !hx.is_zero() || !hy.is_zero() {
                return Err(internal("perp vector has nonzero holonomy"));
            }
            coords.push(self.coords(c)?);
        }
        if !chains.is_empty() {
            let cm = QMat::from_columns(&coords);
            if cm.rank() != expected {
                return Err(internal("perp basis is not independent"));
            }
        }
        let gram = QMat::from_fn(chains.len(), chains.len(), |i, j| {
            self.stars.pair(&chains[i], &chains[j])
        });
        Ok(PerpBasis {
            kind,
            labels,
            chains,
            coords,
            gram,
        })
    }
}

fn edge_endpoints(o: &Origami, vertex_of: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = o.squares();
    let mut tail = vec![0usize; 2 * n];
    let mut head = vec![0usize; 2 * n];
    for i in 0..n {
        tail[i] = vertex_of[i];
        head[i] = vertex_of[o.h().apply(i)];
        tail[n + i] = vertex_of[i];
        head[n + i] = vertex_of[o.v().apply(i)];
    }
    (tail, head)
}

fn add_edge(c: &mut EdgeChain, e: usize, n: usize, sign: i64) {
    let s = rat(sign);
    if e < n {
        c.add_x(e, &s);
    } else {
        c.add_y(e - n, &s);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mstar() -> Origami {
        Origami::parse("h=(2,3)(4,5,6); v=(1,4,2)(3,5); n=6").unwrap()
    }

    fn mstarstar() -> Origami {
        Origami::parse("h=(2,3)(4,5,6); v=(1,2)(3,4); n=6").unwrap()
    }

    #[test]
    fn torus_h1() {
        let o = Origami::parse("h=(); v=(); n=1").unwrap();
        let hom = Homology::new(&o).unwrap();
        assert_eq!(hom.rank(), 2);
        let g = hom.gram();
        let rows = g.to_i64_rows().unwrap();
        assert!(rows == vec![vec![0, 1], vec![-1, 0]] || rows == vec![vec![0, -1], vec![1, 0]]);
    }

    #[test]
    fn ranks() {
        assert_eq!(Homology::new(&mstar()).unwrap().rank(), 6);
        let l = Origami::parse("h=(1,2); v=(1,3); n=3").unwrap();
        assert_eq!(Homology::new(&l).unwrap().rank(), 4);
    }

    #[test]
    fn boundaries_have_zero_class() {
        let o = mstar();
        let hom = Homology::new(&o).unwrap();
        for i in 0..6 {
            let b = EdgeChain::square_boundary(&o, i);
            let coords = hom.coords(&b).unwrap();
            assert!(coords.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn waists_give_unimodular_subbasis_on_mstar() {
        let o = mstar();
        let hom = Homology::new(&o).unwrap();
        let (hc, vc) = hom.waist_systems(PerpOrder::Canonical).unwrap();
        let mut cols = Vec::new();
        for c in hc.iter().chain(vc.iter()) {
            cols.push(hom.coords(c.waist()).unwrap());
        }
        let m = QMat::from_columns(&cols);
        assert_eq!(
            m.det().abs(),
            rat(1),
            "waists change coordinates unimodularly"
        );
    }

    #[test]
    fn perp_ranks() {
        let torus = Origami::parse("h=(); v=(); n=1").unwrap();
        let hom = Homology::new(&torus).unwrap();
        let pb = hom.perp_basis(PerpOrder::Canonical).unwrap();
        assert!(pb.chains.is_empty());

        let hom = Homology::new(&mstar()).unwrap();
        let pb = hom.perp_basis(PerpOrder::Canonical).unwrap();
        assert_eq!(pb.kind, PerpBasisKind::CanonicalWaists);
        assert_eq!(pb.chains.len(), 4);
        for c in &pb.chains {
            let (hx, hy) = c.holonomy();
            assert!(hx.is_zero() && hy.is_zero());
        }
    }

    #[test]
    fn mstarstar_paper_ties_swap_the_tied_columns() {
        let hom = Homology::new(&mstarstar()).unwrap();
        let (_, v_canon) = hom.waist_systems(PerpOrder::Canonical).unwrap();
        let (_, v_paper) = hom.waist_systems(PerpOrder::PaperTies).unwrap();
        assert_eq!(v_canon[0].squares, vec![4, 5]);
        assert_eq!(v_canon[1].squares, vec![0, 1]);
        assert_eq!(v_canon[2].squares, vec![2, 3]);
        assert_eq!(v_paper[1].squares, vec![2, 3]);
        assert_eq!(v_paper[2].squares, vec![0, 1]);
    }
}
