//! Parity of the spin structure (Arf invariant).
//!
//! The quadratic form is `q(γ) = ind(γ) + 1 (mod 2)` on embedded loops
//! avoiding the cone points, where `ind` is the degree of the Gauss map of
//! the tangents. To evaluate `q` on an arbitrary integral cycle the cycle is
//! decomposed into closed edge walks, each walk is pushed off the skeleton to
//! the left of its travel direction (a genuine immersed loop through the
//! square interiors), and
//!
//! `q = ind + (number of walks) + (number of double points)  (mod 2)`
//!
//! which is invariant under oriented smoothing of the double points and so
//! matches the embedded-representative definition on every homology class.
//! Turning is counted in quarter turns at the vertices; crossings are pairs
//! of interleaved connector arcs inside the vertex disks.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::chain::EdgeChain;
use crate::error::{internal, Error};
use crate::homology::Homology;
use crate::origami::Origami;
use crate::Rat;

/// Sub-position scale inside a sector; one ray step is `8 * SCALE`.
const SCALE: i64 = 4096;

/// The spin data of an origami: a symplectic `Z/2` basis with the values of
/// the quadratic form on it, and the Arf invariant.
#[derive(Clone, Debug)]
pub struct SpinData {
    /// `(label, mod-2 coordinates in the ambient H1 basis, q value)`,
    /// alternating `alpha_i`, `beta_i`.
    pub basis: Vec<(String, Vec<u8>, u8)>,
    pub parity: u8,
}

/// Evaluates the quadratic form on an integral cycle.
pub fn q_value(hom: &Homology, chain: &EdgeChain) -> Result<u8, Error> {
    if !chain.is_integral() {
        return Err(internal("q is only evaluated on integral cycles"));
    }
    if !hom.is_cycle(chain) {
        return Err(internal("q of a non-closed chain"));
    }
    let walks = decompose_walks(hom, chain)?;
    if walks.is_empty() {
        return Ok(0); // the zero class
    }
    let stars = hom.stars();
    let mut turning_units: i64 = 0;
    // chords per vertex: (lo, hi) refined interval of each connector arc
    let mut chords: Vec<Vec<(i64, i64)>> = vec![Vec::new(); stars.n_vertices()];
    for walk in &walks {
        let m = walk.len();
        for k in 0..m {
            let arrive = &walk[k];
            let depart = &walk[(k + 1) % m];
            // arrival end of the arriving arc
            let (w_in, ray_in) = if arrive.forward {
                stars.head[arrive.edge]
            } else {
                stars.tail[arrive.edge]
            };
            let (w_out, ray_out) = if depart.forward {
                stars.tail[depart.edge]
            } else {
                stars.head[depart.edge]
            };
            if w_in != w_out {
                return Err(internal("walk is not continuous"));
            }
            let p_in_nominal = ray_in - 1;
            let p_out_nominal = ray_out + 1;
            let delta = p_out_nominal - p_in_nominal;
            // counterclockwise sweep turns the tangent by the swept angle
            // minus two 101.25° junction corrections; clockwise by the angle
            // plus two 78.75° corrections (in units of 11.25°).
            turning_units += if delta > 0 { delta - 18 } else { delta + 14 };
            let p_in = ray_in * SCALE - (SCALE + arrive.copy);
            let p_out = ray_out * SCALE + (SCALE + depart.copy);
            chords[w_in].push((p_in.min(p_out), p_in.max(p_out)));
        }
    }
    if turning_units % 32 != 0 {
        return Err(internal("tangent winding is not an integer"));
    }
    let ind = turning_units / 32;
    let mut double_points: i64 = 0;
    for vertex_chords in &chords {
        for i in 0..vertex_chords.len() {
            for j in i + 1..vertex_chords.len() {
                let (a1, b1) = vertex_chords[i];
                let (a2, b2) = vertex_chords[j];
                let inside1 = a1 < a2 && a2 < b1;
                let inside2 = a1 < b2 && b2 < b1;
                if inside1 != inside2 {
                    double_points += 1;
                }
            }
        }
    }
    let q = (ind + walks.len() as i64 + double_points).rem_euclid(2);
    Ok(q as u8)
}

struct Arc {
    edge: usize,
    forward: bool,
    /// 1-based copy index among traversals of the same directed edge; keeps
    /// parallel strands ordered consistently at both ends.
    copy: i64,
}

/// Splits an integral cycle into closed directed edge walks (each directed
/// edge copy used exactly once).
fn decompose_walks(hom: &Homology, chain: &EdgeChain) -> Result<Vec<Vec<Arc>>, Error> {
    let o = hom.surface();
    let stars = hom.stars();
    let n = o.squares();
    let mut arcs: Vec<Arc> = Vec::new();
    for e in 0..2 * n {
        let c = chain.coeff(e);
        if c.is_zero() {
            continue;
        }
        let count = c.to_integer();
        let count: i64 = i64::try_from(count).map_err(|_| internal("coefficient too large"))?;
        let forward = count > 0;
        let copies = count.unsigned_abs();
        if copies >= SCALE as u64 {
            return Err(internal("coefficient exceeds the lane scale"));
        }
        for t in 1..=copies as i64 {
            arcs.push(Arc {
                edge: e,
                forward,
                copy: t,
            });
        }
    }
    // outgoing arcs per vertex
    let departure_vertex = |a: &Arc| -> usize {
        if a.forward {
            stars.tail[a.edge].0
        } else {
            stars.head[a.edge].0
        }
    };
    let arrival_vertex = |a: &Arc| -> usize {
        if a.forward {
            stars.head[a.edge].0
        } else {
            stars.tail[a.edge].0
        }
    };
    let mut out_by_vertex: Vec<Vec<usize>> = vec![Vec::new(); stars.n_vertices()];
    for (idx, a) in arcs.iter().enumerate() {
        out_by_vertex[departure_vertex(a)].push(idx);
    }
    for list in &mut out_by_vertex {
        list.reverse(); // pop() then yields ascending arc index
    }
    let mut used = vec![false; arcs.len()];
    let mut walks = Vec::new();
    for start in 0..arcs.len() {
        if used[start] {
            continue;
        }
        let mut walk_idx = Vec::new();
        let mut cur = start;
        loop {
            used[cur] = true;
            walk_idx.push(cur);
            let at = arrival_vertex(&arcs[cur]);
            let next = loop {
                match out_by_vertex[at].pop() {
                    Some(i) if used[i] => continue,
                    Some(i) => break Some(i),
                    None => break None,
                }
            };
            match next {
                Some(i) => cur = i,
                None => {
                    // flow balance forces the dead end to close the walk
                    if at != departure_vertex(&arcs[start]) {
                        return Err(internal("walk ended away from its start"));
                    }
                    break;
                }
            }
        }
        walks.push(
            walk_idx
                .into_iter()
                .map(|i| Arc {
                    edge: arcs[i].edge,
                    forward: arcs[i].forward,
                    copy: arcs[i].copy,
                })
                .collect(),
        );
    }
    Ok(walks)
}

/// Parity of the spin structure of `o` (defined when every zero order is even).
pub fn spin_parity(o: &Origami) -> Result<SpinData, Error> {
    let stratum = o.stratum()?;
    if stratum.zero_orders.iter().any(|k| k % 2 != 0) {
        return Err(Error::Unsupported(format!(
            "spin structure undefined: odd zero order in {}",
            stratum.name()
        )));
    }
    let hom = Homology::new(o)?;
    let g = hom.genus();
    let forward: Vec<usize> = (0..2 * g).collect();
    let data = arf_with_seed_order(&hom, &forward)?;
    // independence of the basis choice: redo with the reversed seed order
    let backward: Vec<usize> = (0..2 * g).rev().collect();
    let again = arf_with_seed_order(&hom, &backward)?;
    if data.parity != again.parity {
        return Err(internal("Arf invariant depends on the basis choice"));
    }
    Ok(data)
}

fn arf_with_seed_order(hom: &Homology, seed_order: &[usize]) -> Result<SpinData, Error> {
    let g = hom.genus();
    let dim = 2 * g;
    // gram mod 2
    let gram2: Vec<Vec<u8>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| mod2(hom.gram().get(i, j)))
                .collect::<Vec<u8>>()
        })
        .collect();
    let pairing = |a: &[u8], b: &[u8]| -> u8 {
        let mut acc = 0u8;
        for i in 0..dim {
            if a[i] == 0 {
                continue;
            }
            for j in 0..dim {
                acc ^= a[i] & b[j] & gram2[i][j];
            }
        }
        acc
    };
    let mut pool: Vec<Vec<u8>> = seed_order
        .iter()
        .map(|&i| {
            let mut v = vec![0u8; dim];
            v[i] = 1;
            v
        })
        .collect();
    let mut pairs: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
    while pairs.len() < g {
        // first nonzero vector
        let a_pos = pool
            .iter()
            .position(|v| v.iter().any(|&x| x != 0))
            .ok_or_else(|| internal("symplectic basis extraction ran out of vectors"))?;
        let a = pool.remove(a_pos);
        let b_pos = pool
            .iter()
            .position(|v| pairing(&a, v) == 1)
            .ok_or_else(|| internal("mod-2 intersection form is degenerate"))?;
        let b = pool.remove(b_pos);
        for v in &mut pool {
            let ca = pairing(v, &b);
            let cb = pairing(v, &a);
            for i in 0..dim {
                v[i] ^= ca & a[i];
                v[i] ^= cb & b[i];
            }
        }
        pairs.push((a, b));
    }

    let lift = |v: &[u8]| -> EdgeChain {
        let coords: Vec<Rat> = v.iter().map(|&x| crate::rat(x as i64)).collect();
        hom.class_from_coords(&coords)
    };
    let mut basis = Vec::new();
    let mut parity = 0u8;
    for (i, (a, b)) in pairs.iter().enumerate() {
        let qa = q_value(hom, &lift(a))?;
        let qb = q_value(hom, &lift(b))?;
        parity ^= qa & qb;
        basis.push((format!("alpha{}", i + 1), a.clone(), qa));
        basis.push((format!("beta{}", i + 1), b.clone(), qb));
    }
    // quadratic refinement self-check on all basis pairs
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (ref _la, ref va, qa) = basis[i];
            let (ref _lb, ref vb, qb) = basis[j];
            let sum: Vec<u8> = va.iter().zip(vb).map(|(x, y)| x ^ y).collect();
            let q_sum = q_value(hom, &lift(&sum))?;
            if q_sum != qa ^ qb ^ pairing(va, vb) {
                return Err(internal("quadratic refinement identity failed"));
            }
        }
    }
    Ok(SpinData { basis, parity })
}

fn mod2(x: &Rat) -> u8 {
    let i = x.to_integer();
    let two = crate::Int::from(2);
    let r = num_integer::Integer::mod_floor(&i, &two);
    u8::try_from(r).expect("residue mod 2")
}
