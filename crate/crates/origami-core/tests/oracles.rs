//! Independent brute-force oracles for the combinatorial layer.
//!
//! The implementations under test use closed-form shortcuts (commutator
//! cycles for vertices, propagation for automorphisms, the pushed-off flux
//! count for intersections); the oracles here recompute the same data the
//! slow, obvious way.

use origami_core::homology::Homology;
use origami_core::perm::Permutation;
use origami_core::{EdgeChain, Origami, Rat};

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Corner-orbit singularity oracle: walk quarter-corners around each vertex
/// one 90° sector at a time. Corner `k` of square `i` is its bottom-left
/// (0), bottom-right (1), top-right (2) or top-left (3) corner; rotating a
/// corner counterclockwise by one sector moves to the neighboring square
/// that shares the sector boundary.
fn corner_orbit_orders(o: &Origami) -> Vec<usize> {
    let n = o.squares();
    let h = o.h();
    let v = o.v();
    let h_inv = h.inverse();
    let v_inv = v.inverse();
    // state (i, k): the corner point of square i at position k, seen from the
    // sector of square i adjacent to that corner counterclockwise.
    // One counterclockwise step across the sector boundary:
    //   BL of i  → BR of h⁻¹(i)   (cross the left edge of i)
    //   BR of i  → TR of v⁻¹(i)   (cross the bottom edge of i)
    //   TR of i  → TL of h(i)     (cross the right edge of i)
    //   TL of i  → BL of v(i)     (cross the top edge of i)
    let step = |(i, k): (usize, usize)| -> (usize, usize) {
        match k {
            0 => (h_inv.apply(i), 1),
            1 => (v_inv.apply(i), 2),
            2 => (h.apply(i), 3),
            _ => (v.apply(i), 0),
        }
    };
    let mut seen = vec![false; 4 * n];
    let mut orders = Vec::new();
    for start in 0..4 * n {
        if seen[start] {
            continue;
        }
        let mut state = (start / 4, start % 4);
        let mut sectors = 0usize;
        loop {
            let idx = 4 * state.0 + state.1;
            if sectors > 0 && idx == start {
                break;
            }
            seen[idx] = true;
            sectors += 1;
            state = step(state);
        }
        assert_eq!(sectors % 4, 0, "cone angle is a multiple of 2π/4·4");
        orders.push(sectors / 4 - 1);
    }
    orders.sort_unstable();
    orders
}

fn corpus() -> Vec<Origami> {
    let texts = [
        "h=(); v=(); n=1",
        "h=(1,2); v=(); n=2",
        "h=(); v=(1,2); n=2",
        "h=(1,2); v=(1,3); n=3",
        "h=(1,2,3); v=(1,2); n=3",
        "h=(1,2)(3,4); v=(2,3); n=4",
        "h=(1,2,3,4); v=(1,2); n=4",
        "h=(1,2,3,4,5); v=(1,2); n=5",
        "h=(2,3)(4,5,6); v=(1,4,2)(3,5); n=6",
        "h=(2,3)(4,5,6); v=(1,2)(3,4); n=6",
        "h=(1,2,3)(4,5,6); v=(1,4)(2,5)(3,6); n=6",
        "h=(1,2,3,4,5,6,7); v=(1,4,2)(3,5); n=7",
        "h=(1,2)(3,4)(5,6,7,8); v=(2,3)(4,5)(8,1); n=8",
    ];
    texts.iter().map(|t| Origami::parse(t).unwrap()).collect()
}

#[test]
fn singularities_match_corner_orbits() {
    for o in corpus() {
        let mut got: Vec<usize> = o.singularities().iter().map(|(_, k)| *k).collect();
        got.sort_unstable();
        assert_eq!(got, corner_orbit_orders(&o), "surface {o}");
    }
}

#[test]
fn automorphisms_match_exhaustive_search() {
    // all of S_n for small n
    fn all_perms(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut images: Vec<usize> = (0..n).collect();
        permute(&mut images, 0, &mut out);
        out
    }
    fn permute(images: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
        if k == images.len() {
            out.push(Permutation::from_images(images.clone()).unwrap());
            return;
        }
        for i in k..images.len() {
            images.swap(k, i);
            permute(images, k + 1, out);
            images.swap(k, i);
        }
    }
    for o in corpus().into_iter().filter(|o| o.squares() <= 5) {
        let n = o.squares();
        let mut brute: Vec<Permutation> = all_perms(n)
            .into_iter()
            .filter(|p| o.h().conjugate_by(p) == *o.h() && o.v().conjugate_by(p) == *o.v())
            .collect();
        brute.sort();
        assert_eq!(o.automorphisms(), brute, "surface {o}");
    }
}

#[test]
fn aut_is_a_group_and_iso_an_equivalence() {
    for o in corpus() {
        let auts = o.automorphisms();
        assert!(auts.contains(&Permutation::identity(o.squares())));
        for a in &auts {
            assert!(auts.contains(&a.inverse()));
            for b in &auts {
                assert!(auts.contains(&a.compose(b)));
            }
        }
        // iso to itself is the identity (smallest conjugator)
        assert_eq!(o.iso(&o).unwrap(), Permutation::identity(o.squares()));
    }
}

#[test]
fn intersection_matches_shared_square_oracle() {
    use origami_core::cylinder::cylinders;
    use origami_core::sl2z::Direction;
    for o in corpus() {
        let hom = Homology::new(&o).unwrap();
        let hc = cylinders(&o, Direction::new(1, 0).unwrap()).unwrap();
        let vc = cylinders(&o, Direction::new(0, 1).unwrap()).unwrap();
        for ch in &hc {
            for cv in &vc {
                // crossings happen once per square shared by one row of the
                // horizontal cylinder and one column of the vertical one
                let row = &ch.rows[0];
                let col = &cv.rows[0];
                let shared = row.iter().filter(|s| col.contains(s)).count();
                let pairing = hom.pair(ch.waist(), cv.waist());
                assert_eq!(pairing, rat(shared as i64), "{o}");
            }
        }
    }
}

#[test]
fn holonomy_is_linear_and_kills_boundaries() {
    for o in corpus() {
        let n = o.squares();
        for i in 0..n {
            let b = EdgeChain::square_boundary(&o, i);
            let (hx, hy) = b.holonomy();
            assert!(hx == rat(0) && hy == rat(0));
        }
        let mut c = EdgeChain::zero(n);
        c.set_x(0, rat(2));
        c.set_y(n - 1, rat(-3));
        let (hx, hy) = c.holonomy();
        assert_eq!((hx, hy), (rat(2), rat(-3)));
    }
}

#[test]
fn h1_rank_matches_euler_count() {
    for o in corpus() {
        let hom = Homology::new(&o).unwrap();
        let v = o.vertices().len() as i64;
        let n = o.squares() as i64;
        // V - E + F = 2 - 2g with E = 2n, F = n
        let genus = (2 - (v - 2 * n + n)) / 2;
        assert_eq!(hom.rank() as i64, 2 * genus, "surface {o}");
    }
}

#[test]
fn sl2z_relations_hold_up_to_iso() {
    use origami_core::sl2z::{Gen, Sl2zMatrix};
    for o in corpus() {
        // S⁴ = Id exactly
        let mut cur = o.clone();
        for _ in 0..4 {
            cur = Gen::S.act(&cur);
        }
        assert_eq!(cur, o, "S^4 on {o}");
        // (ST)⁶ = Id up to isomorphism
        let st = Sl2zMatrix::new(0, -1, 1, 1).unwrap();
        let mut cur = o.clone();
        for _ in 0..6 {
            cur = st.act(&cur);
        }
        assert!(cur.iso(&o).is_some(), "(ST)^6 on {o}");
        // identity acts trivially
        assert_eq!(Sl2zMatrix::identity().act(&o), o);
    }
}

#[test]
fn spin_parity_is_an_sl2z_invariant() {
    use origami_core::sl2z::Gen;
    use origami_core::spin::spin_parity;
    for o in corpus() {
        let stratum = o.stratum().unwrap();
        if stratum.zero_orders.iter().any(|k| k % 2 != 0) {
            continue;
        }
        let parity = spin_parity(&o).unwrap().parity;
        for g in [Gen::T, Gen::S, Gen::TInv, Gen::SInv] {
            let acted = g.act(&o);
            assert_eq!(
                spin_parity(&acted).unwrap().parity,
                parity,
                "{o} under {g:?}"
            );
        }
    }
}

#[test]
fn involution_fixed_points_are_relabeling_invariant() {
    use origami_core::involution::hyperelliptic_involution;
    for o in corpus().into_iter().filter(|o| o.squares() <= 6) {
        let count = hyperelliptic_involution(&o).map(|w| w.fixed_points.total());
        // relabel by a fixed nontrivial permutation
        let n = o.squares();
        if n < 2 {
            continue;
        }
        let g = Permutation::parse_cycles("(1,2)", n).unwrap();
        let o2 = Origami::new(o.h().conjugate_by(&g), o.v().conjugate_by(&g)).unwrap();
        let count2 = hyperelliptic_involution(&o2).map(|w| w.fixed_points.total());
        assert_eq!(count, count2, "{o}");
    }
}

#[test]
fn intersection_rejects_foreign_cycles() {
    use origami_core::Error;
    let a = Origami::parse("h=(1,2); v=(1,3); n=3").unwrap();
    let b = Origami::parse("h=(); v=(); n=1").unwrap();
    let hom_a = Homology::new(&a).unwrap();
    let hom_b = Homology::new(&b).unwrap();
    let ca = hom_a.cycle(hom_a.basis()[0].clone()).unwrap();
    let cb = hom_b.cycle(hom_b.basis()[0].clone()).unwrap();
    assert!(matches!(
        hom_a.intersection(&ca, &cb),
        Err(Error::SurfaceMismatch)
    ));
    assert_eq!(hom_a.intersection(&ca, &ca).unwrap(), rat(0));
}
