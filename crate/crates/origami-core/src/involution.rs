//! Affine involutions with derivative `-Id` and their fixed points.
//!
//! An affine map with derivative `-Id` reads `z ↦ c - z` in developing
//! coordinates; on an origami the translation part `c` is only meaningful
//! modulo `Z²` and lands in one of the four half-integer classes. Passing to
//! the 2×2 subdivision makes every class integral, so a single combinatorial
//! search covers all four: a quarter-square permutation `π` with
//!
//! `π h₄ π⁻¹ = h₄⁻¹`,  `π v₄ π⁻¹ = v₄⁻¹`,  `π² = id`
//!
//! is exactly a `-Id` affine automorphism. Fixed points solve `2z = c`; they
//! are centers of fixed quarter squares, midpoints of flipped quarter edges,
//! and fixed subdivision vertices.

use alloc::vec;
use alloc::vec::Vec;

use crate::origami::Origami;
use crate::perm::Permutation;

/// Where the fixed points of the involution sit, in original-square terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoints {
    /// at vertices of the original square complex
    pub vertices: usize,
    /// at midpoints of original edges
    pub edge_midpoints: usize,
    /// at centers of original squares
    pub centers: usize,
    /// at quarter-integer points (only for half-integer translation classes)
    pub quarter_points: usize,
}

impl FixedPoints {
    pub fn total(&self) -> usize {
        self.vertices + self.edge_midpoints + self.centers + self.quarter_points
    }
}

/// A `-Id` affine automorphism.
#[derive(Clone, Debug)]
pub struct InvolutionWitness {
    /// 180°-rotation permutation of the 2×2-subdivided squares; quarter
    /// `(i, qx, qy)` has index `4i + qx + 2qy`.
    pub square_map: Permutation,
    /// Map on the original squares when the translation class is integral.
    pub square_map_original: Option<Permutation>,
    /// Translation class `(c_x, c_y)` in half-integer units modulo `Z`:
    /// entries are 0 or 1, meaning `0` or `1/2`.
    pub translation_class: (u8, u8),
    pub fixed_points: FixedPoints,
}

/// 2×2 subdivision of every square.
fn subdivide(o: &Origami) -> Origami {
    let n = o.squares();
    let idx = |i: usize, qx: usize, qy: usize| 4 * i + qx + 2 * qy;
    let mut h4 = vec![0usize; 4 * n];
    let mut v4 = vec![0usize; 4 * n];
    for i in 0..n {
        for qy in 0..2 {
            h4[idx(i, 0, qy)] = idx(i, 1, qy);
            h4[idx(i, 1, qy)] = idx(o.h().apply(i), 0, qy);
        }
        for qx in 0..2 {
            v4[idx(i, qx, 0)] = idx(i, qx, 1);
            v4[idx(i, qx, 1)] = idx(o.v().apply(i), qx, 0);
        }
    }
    Origami::new(
        Permutation::from_images(h4).expect("subdivision bijection"),
        Permutation::from_images(v4).expect("subdivision bijection"),
    )
    .expect("subdivision stays connected")
}

/// Searches for an affine involution with derivative `-Id`.
///
/// All four translation classes and all starting quarters are tried in a
/// fixed order (integral class first), and the first consistent witness is
/// returned, so the result is deterministic.
pub fn hyperelliptic_involution(o: &Origami) -> Option<InvolutionWitness> {
    let n = o.squares();
    let sub = subdivide(o);
    let h4 = sub.h();
    let v4 = sub.v();
    let h4_inv = h4.inverse();
    let v4_inv = v4.inverse();
    let idx = |i: usize, qx: usize, qy: usize| 4 * i + qx + 2 * qy;

    // candidate images of quarter (0,0,0), ordered by translation class:
    // target position (1,1) gives class (0,0), then (0,1) → (1/2,0),
    // (1,0) → (0,1/2), (0,0) → (1/2,1/2)
    let mut candidates = Vec::with_capacity(4 * n);
    for &(qx, qy) in &[(1usize, 1usize), (0, 1), (1, 0), (0, 0)] {
        for i in 0..n {
            candidates.push(idx(i, qx, qy));
        }
    }

    for target in candidates {
        let Some(images) = propagate_involution(&sub, h4, v4, &h4_inv, &v4_inv, target) else {
            continue;
        };
        let pi = Permutation::from_images(images).expect("propagated bijection");
        // must be an involution
        if !pi.compose(&pi).is_identity() {
            continue;
        }
        return Some(build_witness(o, &sub, pi));
    }
    None
}

fn propagate_involution(
    sub: &Origami,
    h4: &Permutation,
    v4: &Permutation,
    h4_inv: &Permutation,
    v4_inv: &Permutation,
    target: usize,
) -> Option<Vec<usize>> {
    let m = sub.squares();
    let mut images = vec![usize::MAX; m];
    images[0] = target;
    let mut stack = vec![0usize];
    while let Some(q) = stack.pop() {
        let pq = images[q];
        for (a, b) in [
            (h4.apply(q), h4_inv.apply(pq)),
            (v4.apply(q), v4_inv.apply(pq)),
        ] {
            if images[a] == usize::MAX {
                images[a] = b;
                stack.push(a);
            } else if images[a] != b {
                return None;
            }
        }
    }
    // bijectivity
    let mut seen = vec![false; m];
    for &j in &images {
        if j == usize::MAX || seen[j] {
            return None;
        }
        seen[j] = true;
    }
    // full consistency (propagation used one orientation only)
    for q in 0..m {
        if images[h4.apply(q)] != h4_inv.apply(images[q])
            || images[v4.apply(q)] != v4_inv.apply(images[q])
        {
            return None;
        }
    }
    Some(images)
}

fn build_witness(o: &Origami, sub: &Origami, pi: Permutation) -> InvolutionWitness {
    let n = o.squares();
    let m = sub.squares();
    let h4 = sub.h();
    let v4 = sub.v();

    // translation class from the image of quarter (0,0,0)
    let target = pi.apply(0);
    let (tqx, tqy) = ((target % 4) % 2, (target % 4) / 2);
    let class = ((1 - tqx as u8) % 2, (1 - tqy as u8) % 2);

    // original-square map for the integral class
    let square_map_original = if class == (0, 0) {
        let orig: Vec<usize> = (0..n).map(|i| pi.apply(4 * i) / 4).collect();
        Permutation::from_images(orig).ok()
    } else {
        None
    };

    // fixed quarter squares → their centers (quarter-integer points)
    let mut centers4 = 0usize;
    for q in 0..m {
        if pi.apply(q) == q {
            centers4 += 1;
        }
    }
    // flipped quarter edges → their midpoints (quarter-integer points)
    let mut edges4 = 0usize;
    for q in 0..m {
        if v4.apply(pi.apply(q)) == q {
            edges4 += 1; // bottom edge of q maps to itself reversed
        }
        if h4.apply(pi.apply(q)) == q {
            edges4 += 1; // left edge of q maps to itself reversed
        }
    }
    // fixed subdivision vertices, classified by the representative corner
    let vertices4 = sub.vertices();
    let mut vertex_of = vec![0usize; m];
    for (w, cyc) in vertices4.iter().enumerate() {
        for &q in cyc {
            vertex_of[q] = w;
        }
    }
    let mut fixed = FixedPoints {
        vertices: 0,
        edge_midpoints: 0,
        centers: 0,
        quarter_points: centers4 + edges4,
    };
    for (w, cyc) in vertices4.iter().enumerate() {
        // f(vertex at BL(q)) = vertex at BL(v4 h4 π(q))
        let q = cyc[0];
        let image_vertex = vertex_of[v4.apply(h4.apply(pi.apply(q)))];
        if image_vertex != w {
            continue;
        }
        let (qx, qy) = ((q % 4) % 2, (q % 4) / 2);
        match (qx, qy) {
            (0, 0) => fixed.vertices += 1,
            (1, 0) | (0, 1) => fixed.edge_midpoints += 1,
            (1, 1) => fixed.centers += 1,
            _ => unreachable!(),
        }
    }

    InvolutionWitness {
        square_map: pi,
        square_map_original,
        translation_class: class,
        fixed_points: fixed,
    }
}
