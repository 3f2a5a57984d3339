//! Bubbling a square handle into a horizontal unit slit.
//!
//! The slit runs along the top edge of a chosen square `a`. Cutting it open
//! and gluing a unit-square cylinder back in reads `h'(s) = s`,
//! `v'(a) = s`, `v'(s) = v(a)` on the permutation pair. Whether this raises
//! the genus depends on the slit: when the two endpoints of the slit are
//! distinct vertices, the circle-to-bank gluing merges them and the genus
//! goes up by one; when they already coincide, the one-square insertion
//! merely thickens the horizontal level and the surface class is unchanged.
//! In the latter case a two-square handle (a slit torus of waist 2, cut along
//! half of its own horizontal circle) is glued in instead, which always
//! raises the genus, at the price of adding two squares instead of one.
//!
//! Either way the result is checked a posteriori: genus up by exactly one and
//! total zero order up by exactly two; a failed check is a bug, not an input
//! error.

use alloc::vec::Vec;

use crate::error::{internal, Error};
use crate::origami::{Origami, StratumSignature};
use crate::perm::Permutation;

/// A horizontal unit slit along the top edge of `base_square` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlitSpec {
    pub base_square: usize,
}

/// The result of bubbling a handle.
#[derive(Clone, Debug)]
pub struct BubbleOutcome {
    pub origami: Origami,
    /// 1 for a distinct-endpoint slit, 2 when the endpoints coincided.
    pub added_squares: usize,
    /// Whether the slit endpoints were distinct vertices of the surface.
    pub slit_endpoints_distinct: bool,
    pub stratum_before: StratumSignature,
    pub stratum_after: StratumSignature,
}

/// Glues a square handle into the slit, raising the genus by one.
pub fn bubble_square_handle(o: &Origami, slit: SlitSpec) -> Result<BubbleOutcome, Error> {
    let n = o.squares();
    let a = slit.base_square;
    if a >= n {
        return Err(Error::BadMatrix(alloc::format!(
            "slit square {} out of range 1..{n}",
            a + 1
        )));
    }
    let before = o.stratum()?;

    // slit endpoints: the vertices at the two top corners of square a,
    // i.e. at the bottom-left corners of v(a) and v(h(a))
    let vertices = o.vertices();
    let mut vertex_of = alloc::vec![0usize; n];
    for (w, cyc) in vertices.iter().enumerate() {
        for &s in cyc {
            vertex_of[s] = w;
        }
    }
    let left_end = vertex_of[o.v().apply(a)];
    let right_end = vertex_of[o.v().apply(o.h().apply(a))];
    let distinct = left_end != right_end;

    let added = if distinct { 1 } else { 2 };
    let m = n + added;
    let mut h_images: Vec<usize> = (0..m)
        .map(|i| if i < n { o.h().apply(i) } else { i })
        .collect();
    let mut v_images: Vec<usize> = (0..m)
        .map(|i| if i < n { o.v().apply(i) } else { i })
        .collect();
    let s1 = n;
    v_images[a] = s1;
    v_images[s1] = o.v().apply(a);
    if !distinct {
        // two-square handle: its own horizontal 2-cycle, slit along the top
        // of the first handle square
        let s2 = n + 1;
        h_images[s1] = s2;
        h_images[s2] = s1;
    }
    let result = Origami::new(
        Permutation::from_images(h_images).map_err(|_| internal("handle gluing broke h"))?,
        Permutation::from_images(v_images).map_err(|_| internal("handle gluing broke v"))?,
    )?;

    let after = result.stratum()?;
    if after.genus != before.genus + 1 {
        return Err(internal("bubbling failed to raise the genus by one"));
    }
    let order_before: usize = before.zero_orders.iter().sum();
    let order_after: usize = after.zero_orders.iter().sum();
    if order_after != order_before + 2 {
        return Err(internal(
            "bubbling failed to add two to the total zero order",
        ));
    }
    Ok(BubbleOutcome {
        origami: result,
        added_squares: added,
        slit_endpoints_distinct: distinct,
        stratum_before: before,
        stratum_after: after,
    })
}
