//! Cylinder decompositions in rational directions.
//!
//! Horizontally, the rows of squares are the cycles of `h`; two vertically
//! adjacent rows belong to one cylinder exactly when the horizontal line
//! between them carries no singular vertex. Any other rational direction is
//! reduced to the horizontal one by an `SL(2,Z)` change of charts, and the
//! waist classes are pulled back to the original surface through the
//! generator word.

use alloc::vec;
use alloc::vec::Vec;

use crate::chain::{transport, EdgeChain};
use crate::error::{internal, Error};
use crate::origami::Origami;
use crate::rat;
use crate::sl2z::{Direction, Gen};

/// A maximal cylinder in some periodic direction.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub direction: Direction,
    /// Rows of squares, bottom to top (in the normalized charts); each row is
    /// an `h`-cycle of the normalized surface starting at its smallest label.
    pub rows: Vec<Vec<usize>>,
    /// Waist length in square sides.
    pub circumference: usize,
    pub height: usize,
    /// Sorted union of the rows.
    pub squares: Vec<usize>,
    waist: EdgeChain,
}

impl Cylinder {
    /// Core-curve homology class, as a chain on the original surface,
    /// oriented along the (canonical representative of the) direction.
    pub fn waist(&self) -> &EdgeChain {
        &self.waist
    }
}

/// The cylinder decomposition of `o` in direction `dir`, in canonical order:
/// ascending circumference, ties by the smallest square contained.
pub fn cylinders(o: &Origami, dir: Direction) -> Result<Vec<Cylinder>, Error> {
    // reduce to the horizontal direction
    let word = dir.to_horizontal().word();
    let steps: Vec<Gen> = word.into_iter().rev().collect(); // application order
    let mut bases = vec![o.clone()];
    for g in &steps {
        let next = g.act(bases.last().expect("nonempty"));
        bases.push(next);
    }
    let flat = bases.last().expect("nonempty").clone();

    let mut cyls = horizontal_cylinders(&flat)?;
    // pull each waist back to o
    for cyl in &mut cyls {
        let mut chain = cyl.waist.clone();
        for k in (0..steps.len()).rev() {
            chain = transport(steps[k], &bases[k], &chain);
        }
        cyl.waist = chain;
        cyl.direction = dir;
        // transported waist must have holonomy circumference·(p, q)
        let (hx, hy) = cyl.waist.holonomy();
        let c = rat(cyl.circumference as i64);
        if hx != &c * &rat(dir.p) || hy != &c * &rat(dir.q) {
            return Err(internal("waist holonomy does not match its direction"));
        }
    }

    let total: usize = cyls.iter().map(|c| c.circumference * c.height).sum();
    if total != o.squares() {
        return Err(internal("cylinders do not partition the squares"));
    }
    Ok(cyls)
}

/// Decomposition into horizontal cylinders, waists as plain `x`-rows.
fn horizontal_cylinders(o: &Origami) -> Result<Vec<Cylinder>, Error> {
    let n = o.squares();
    let rows = o.h().cycles();
    let mut row_of = vec![0usize; n];
    for (r, row) in rows.iter().enumerate() {
        for &j in row {
            row_of[j] = r;
        }
    }
    let vertices = o.vertices();
    let mut vertex_of = vec![0usize; n];
    let mut order = vec![0usize; vertices.len()];
    for (w, cyc) in vertices.iter().enumerate() {
        for &s in cyc {
            vertex_of[s] = w;
        }
        order[w] = cyc.len() - 1;
    }

    // the line above row r carries the vertices at the bottom-left corners of
    // the squares v(j), j in r
    let ceiling_regular = |r: usize| -> bool {
        rows[r]
            .iter()
            .all(|&j| order[vertex_of[o.v().apply(j)]] == 0)
    };
    let floor_regular = |r: usize| -> bool { rows[r].iter().all(|&j| order[vertex_of[j]] == 0) };
    let row_above = |r: usize| -> Result<usize, Error> {
        let first = rows[r][0];
        let up = row_of[o.v().apply(first)];
        // across a regular line the rows must match up square by square
        if rows[up].len() != rows[r].len() {
            return Err(internal("regular line between rows of different lengths"));
        }
        for &j in &rows[r] {
            if row_of[o.v().apply(j)] != up {
                return Err(internal("regular line maps one row to two rows"));
            }
        }
        Ok(up)
    };
    let row_below = |r: usize| -> usize {
        let first = rows[r][0];
        row_of[o.v().inverse().apply(first)]
    };

    let mut used = vec![false; rows.len()];
    let mut cyls = Vec::new();
    for start in 0..rows.len() {
        if used[start] {
            continue;
        }
        // walk down to a singular floor, stopping if we wrap all the way
        let mut bottom = start;
        let mut guard = 0;
        while floor_regular(bottom) {
            let below = row_below(bottom);
            guard += 1;
            if below == start && guard > 1 {
                break; // wrapped: torus-like component
            }
            if guard > rows.len() {
                break;
            }
            bottom = below;
        }
        if !floor_regular(bottom) {
            // fine: bottom rests on a singular line
        } else {
            // wrap case: start from the row containing the smallest square
            let mut comp = vec![bottom];
            let mut cur = bottom;
            loop {
                let up = row_above(cur)?;
                if up == bottom {
                    break;
                }
                comp.push(up);
                cur = up;
            }
            bottom = *comp
                .iter()
                .min_by_key(|&&r| rows[r][0])
                .expect("nonempty component");
        }
        // collect rows bottom → top
        let mut members = vec![bottom];
        used[bottom] = true;
        let mut cur = bottom;
        while ceiling_regular(cur) {
            let up = row_above(cur)?;
            if up == bottom {
                break;
            }
            if used[up] {
                return Err(internal("row claimed by two cylinders"));
            }
            members.push(up);
            used[up] = true;
            cur = up;
        }
        let circumference = rows[bottom].len();
        let mut waist = EdgeChain::zero(n);
        for &j in &rows[bottom] {
            waist.add_x(j, &rat(1));
        }
        let mut squares: Vec<usize> = members
            .iter()
            .flat_map(|&r| rows[r].iter().copied())
            .collect();
        squares.sort_unstable();
        let height = members.len();
        cyls.push(Cylinder {
            direction: Direction::new(1, 0)?,
            rows: members.into_iter().map(|r| rows[r].clone()).collect(),
            circumference,
            height,
            squares,
            waist,
        });
    }
    cyls.sort_by_key(|c| (c.circumference, c.squares[0]));
    Ok(cyls)
}

/// Waist class of a single row (any row of a cylinder gives the same class,
/// which the tests check). Used by the row-independence property suite.
pub fn row_waist(o: &Origami, dir: Direction, row: &[usize]) -> Result<EdgeChain, Error> {
    let word = dir.to_horizontal().word();
    let steps: Vec<Gen> = word.into_iter().rev().collect();
    let mut bases = vec![o.clone()];
    for g in &steps {
        let next = g.act(bases.last().expect("nonempty"));
        bases.push(next);
    }
    let mut chain = EdgeChain::zero(o.squares());
    for &j in row {
        chain.add_x(j, &rat(1));
    }
    for k in (0..steps.len()).rev() {
        chain = transport(steps[k], &bases[k], &chain);
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::Homology;

    fn mstar() -> Origami {
        Origami::parse("h=(2,3)(4,5,6); v=(1,4,2)(3,5); n=6").unwrap()
    }

    fn mstarstar() -> Origami {
        Origami::parse("h=(2,3)(4,5,6); v=(1,2)(3,4); n=6").unwrap()
    }

    #[test]
    fn mstar_horizontal_and_vertical() {
        let o = mstar();
        let hc = cylinders(&o, Direction::new(1, 0).unwrap()).unwrap();
        assert_eq!(
            hc.iter().map(|c| c.circumference).collect::<Vec<_>>(),
            vec![1, 2, 3]
        );
        assert!(hc.iter().all(|c| c.height == 1));
        let vc = cylinders(&o, Direction::new(0, 1).unwrap()).unwrap();
        assert_eq!(
            vc.iter().map(|c| c.circumference).collect::<Vec<_>>(),
            vec![1, 2, 3]
        );
        assert!(vc.iter().all(|c| c.height == 1));
    }

    #[test]
    fn mstarstar_vertical_merges() {
        let o = mstarstar();
        let vc = cylinders(&o, Direction::new(0, 1).unwrap()).unwrap();
        assert_eq!(
            vc.iter()
                .map(|c| (c.circumference, c.height))
                .collect::<Vec<_>>(),
            vec![(1, 2), (2, 1), (2, 1)]
        );
        assert_eq!(vc[0].squares, vec![4, 5]);
    }

    #[test]
    fn mstar_slope_one() {
        let o = mstar();
        let dc = cylinders(&o, Direction::new(1, 1).unwrap()).unwrap();
        assert_eq!(dc.len(), 2);
        assert!(dc.iter().all(|c| c.circumference == 3 && c.height == 1));
    }

    #[test]
    fn torus_directions() {
        let o = Origami::parse("h=(); v=(); n=1").unwrap();
        for (p, q) in [(1i64, 0i64), (0, 1), (1, 1), (2, 1), (1, -2), (3, 2)] {
            let c = cylinders(&o, Direction::new(p, q).unwrap()).unwrap();
            assert_eq!(c.len(), 1);
            assert_eq!(c[0].circumference * c[0].height, 1);
        }
    }

    #[test]
    fn tall_torus_has_height_two() {
        let o = Origami::parse("h=(); v=(1,2); n=2").unwrap();
        let c = cylinders(&o, Direction::new(1, 0).unwrap()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].circumference, c[0].height), (1, 2));
    }

    #[test]
    fn waists_are_row_independent() {
        let o = mstarstar();
        let hom = Homology::new(&o).unwrap();
        let vc = cylinders(&o, Direction::new(0, 1).unwrap()).unwrap();
        let tall = &vc[0];
        assert_eq!(tall.rows.len(), 2);
        let w1 = row_waist(&o, tall.direction, &tall.rows[0]).unwrap();
        let w2 = row_waist(&o, tall.direction, &tall.rows[1]).unwrap();
        assert!(hom.same_class(&w1, &w2).unwrap());
        assert!(hom.same_class(tall.waist(), &w1).unwrap());
    }
}
