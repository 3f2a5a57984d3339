//! The symplectic intersection pairing on 1-cycles, computed combinatorially.
//!
//! Around a vertex of cone order `k` there are `4(k+1)` quarter-plane sectors
//! separated by `4(k+1)` edge-ends. Walking counterclockwise from the
//! bottom-left sector of square `s` one meets, in order, the outgoing end of
//! `x_s`, the outgoing end of `y_s`, the incoming end of `x_{h⁻¹(s)}`, the
//! incoming end of `y_{h(v⁻¹(h⁻¹(s)))}`, and then the bottom-left sector of
//! `c(s)` where `c = v h v⁻¹ h⁻¹` is the corner rotation.
//!
//! To intersect two cycles, one of them is pushed off the 1-skeleton to the
//! left of each edge's reference orientation. The pushed cycle crosses the
//! other one only inside small disks around the vertices, and there the
//! crossing count only depends on the cumulative flux of pushed strands
//! before each edge-end in the (cut-open) circular order; no explicit arcs
//! are needed. The orientation convention makes `⟨horizontal, vertical⟩ = +1`
//! on the unit torus.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::chain::EdgeChain;
use crate::origami::Origami;
use crate::Rat;

/// Angular bookkeeping for one vertex: the edge-ends in counterclockwise
/// order. Coordinates advance by 8 per quarter turn, so sub-positions `±1`
/// next to a ray stay inside the adjacent sectors.
#[derive(Clone, Debug)]
pub struct Star {
    /// `(coordinate, edge index, incoming?)`, sorted by coordinate.
    pub rays: Vec<(i64, usize, bool)>,
}

/// Star tables for every vertex of an origami.
#[derive(Clone, Debug)]
pub struct Stars {
    n: usize,
    /// vertex id of the bottom-left corner of each square
    pub vertex_of: Vec<usize>,
    /// squares (bottom-left corners) on each vertex, in corner-rotation order
    pub vertex_cycles: Vec<Vec<usize>>,
    pub stars: Vec<Star>,
    /// `(vertex, ray coordinate)` of the tail end of each edge
    pub tail: Vec<(usize, i64)>,
    /// `(vertex, ray coordinate)` of the head end of each edge
    pub head: Vec<(usize, i64)>,
}

impl Stars {
    pub fn new(o: &Origami) -> Stars {
        let n = o.squares();
        let cycles = o.vertices();
        let mut vertex_of = vec![0usize; n];
        for (w, cyc) in cycles.iter().enumerate() {
            for &s in cyc {
                vertex_of[s] = w;
            }
        }
        let h_inv = o.h().inverse();
        let v_inv = o.v().inverse();
        let mut tail = vec![(usize::MAX, 0i64); 2 * n];
        let mut head = vec![(usize::MAX, 0i64); 2 * n];
        let mut stars = Vec::with_capacity(cycles.len());
        for (w, cyc) in cycles.iter().enumerate() {
            let mut rays = Vec::with_capacity(4 * cyc.len());
            for (t, &s) in cyc.iter().enumerate() {
                let base = 32 * t as i64;
                let x_out = s; // edge index of x_s
                let y_out = n + s;
                let x_in = h_inv.apply(s);
                let y_in = n + o.h().apply(v_inv.apply(h_inv.apply(s)));
                rays.push((base, x_out, false));
                rays.push((base + 8, y_out, false));
                rays.push((base + 16, x_in, true));
                rays.push((base + 24, y_in, true));
                debug_assert_eq!(tail[x_out].0, usize::MAX);
                tail[x_out] = (w, base);
                debug_assert_eq!(tail[y_out].0, usize::MAX);
                tail[y_out] = (w, base + 8);
                debug_assert_eq!(head[x_in].0, usize::MAX);
                head[x_in] = (w, base + 16);
                debug_assert_eq!(head[y_in].0, usize::MAX);
                head[y_in] = (w, base + 24);
            }
            stars.push(Star { rays });
        }
        debug_assert!(tail.iter().all(|&(w, _)| w != usize::MAX));
        debug_assert!(head.iter().all(|&(w, _)| w != usize::MAX));
        Stars {
            n,
            vertex_of,
            vertex_cycles: cycles,
            stars,
            tail,
            head,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.stars.len()
    }

    /// Algebraic intersection number `⟨c, d⟩` of two cycles.
    ///
    /// `c` is pushed to the left of each edge (a strand next to the outgoing
    /// end sits just counterclockwise of the ray, next to the incoming end
    /// just clockwise). Cutting each vertex circle open before coordinate 0,
    /// the signed flux of `c` crossing the ray at coordinate `r` is the sum
    /// of strand fluxes at positions below `r`, counted into the disk; each
    /// unit of counterclockwise flux crossing an incoming (resp. outgoing)
    /// `d`-ray contributes `+d_e` (resp. `-d_e`).
    pub fn pair(&self, c: &EdgeChain, d: &EdgeChain) -> Rat {
        assert_eq!(c.squares(), self.n);
        assert_eq!(d.squares(), self.n);
        // slot events of c per vertex: (position, flux)
        let mut slots: Vec<Vec<(i64, Rat)>> = vec![Vec::new(); self.stars.len()];
        for e in 0..2 * self.n {
            let ce = c.coeff(e);
            if ce.is_zero() {
                continue;
            }
            let (wt, pt) = self.tail[e];
            slots[wt].push((pt + 1, -ce.clone()));
            let (wh, ph) = self.head[e];
            slots[wh].push((ph - 1, ce.clone()));
        }
        let mut total = Rat::zero();
        for (w, star) in self.stars.iter().enumerate() {
            if slots[w].is_empty() {
                continue;
            }
            slots[w].sort_by_key(|&(p, _)| p);
            // prefix flux, swept in ray order
            let mut flux = Rat::zero();
            let mut si = 0;
            for &(rp, e, incoming) in &star.rays {
                while si < slots[w].len() && slots[w][si].0 < rp {
                    flux += &slots[w][si].1;
                    si += 1;
                }
                let de = d.coeff(e);
                if !de.is_zero() && !flux.is_zero() {
                    if incoming {
                        total += &flux * de;
                    } else {
                        total -= &flux * de;
                    }
                }
            }
        }
        total
    }
}
