//! 1-chains on the square complex of an origami.
//!
//! The complex has one 2-cell per square, two 1-cells per square (the bottom
//! edge `x_i`, oriented rightward, and the left edge `y_i`, oriented upward)
//! and the cone points as 0-cells. Edges are identified by the gluing:
//! the bottom of square `i` is the top of `v⁻¹(i)`, the left of `i` is the
//! right of `h⁻¹(i)`. The boundary of square `i` is
//! `x_i + y_{h(i)} - x_{v(i)} - y_i`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::origami::Origami;
use crate::rat;
use crate::sl2z::Gen;
use crate::Rat;

/// A rational 1-chain: coefficient `a_i` on `x_i`, `b_i` on `y_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeChain {
    n: usize,
    /// length `2n`: entries `0..n` are the `x` coefficients, `n..2n` the `y`.
    coeffs: Vec<Rat>,
}

impl EdgeChain {
    pub fn zero(n: usize) -> Self {
        EdgeChain {
            n,
            coeffs: vec![Rat::zero(); 2 * n],
        }
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<Rat>) -> Self {
        assert_eq!(coeffs.len(), 2 * n);
        EdgeChain { n, coeffs }
    }

    pub fn squares(&self) -> usize {
        self.n
    }

    pub fn x(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn y(&self, i: usize) -> &Rat {
        &self.coeffs[self.n + i]
    }

    pub fn set_x(&mut self, i: usize, v: Rat) {
        self.coeffs[i] = v;
    }

    pub fn set_y(&mut self, i: usize, v: Rat) {
        self.coeffs[self.n + i] = v;
    }

    pub fn add_x(&mut self, i: usize, v: &Rat) {
        self.coeffs[i] += v;
    }

    pub fn add_y(&mut self, i: usize, v: &Rat) {
        self.coeffs[self.n + i] += v;
    }

    /// Raw edge indexing: `e < n` is `x_e`, otherwise `y_{e-n}`.
    pub fn coeff(&self, e: usize) -> &Rat {
        &self.coeffs[e]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn add(&self, other: &EdgeChain) -> EdgeChain {
        assert_eq!(self.n, other.n);
        EdgeChain {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &EdgeChain) -> EdgeChain {
        assert_eq!(self.n, other.n);
        EdgeChain {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> EdgeChain {
        EdgeChain {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    /// `(Σ a_i, Σ b_i)`: the pushforward of the chain to the torus, i.e.
    /// its holonomy when the chain is a cycle.
    pub fn holonomy(&self) -> (Rat, Rat) {
        let mut hx = Rat::zero();
        let mut hy = Rat::zero();
        for i in 0..self.n {
            hx += self.x(i);
            hy += self.y(i);
        }
        (hx, hy)
    }

    /// Boundary of the 2-cell of square `i`.
    pub fn square_boundary(o: &Origami, i: usize) -> EdgeChain {
        let n = o.squares();
        let mut c = EdgeChain::zero(n);
        c.add_x(i, &rat(1));
        c.add_y(o.h().apply(i), &rat(1));
        c.add_x(o.v().apply(i), &rat(-1));
        c.add_y(i, &rat(-1));
        c
    }

    /// `∂₁` evaluated against the vertex decomposition: net flow at each vertex.
    pub fn boundary(&self, o: &Origami, vertex_of: &[usize], n_vertices: usize) -> Vec<Rat> {
        let mut flow = vec![Rat::zero(); n_vertices];
        for i in 0..self.n {
            let a = self.x(i);
            if !a.is_zero() {
                flow[vertex_of[o.h().apply(i)]] += a;
                flow[vertex_of[i]] -= a;
            }
            let b = self.y(i);
            if !b.is_zero() {
                flow[vertex_of[o.v().apply(i)]] += b;
                flow[vertex_of[i]] -= b;
            }
        }
        flow
    }
}

impl fmt::Debug for EdgeChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e < self.n {
                write!(f, "{c}*x{}", e + 1)?;
            } else {
                write!(f, "{c}*y{}", e - self.n + 1)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Rewrites a chain living on `gen.act(base)` as a chain on `base`.
///
/// The new complex's edges are specific paths on the old surface; each is
/// homotoped into the old 1-skeleton. With `(h, v)` the permutations of
/// `base`:
///
/// * `T`:   `x'_i ↦ x_i`,            `y'_i ↦ y_{h⁻¹(i)} - x_{h⁻¹(i)}`
/// * `T⁻¹`: `x'_i ↦ x_i`,            `y'_i ↦ x_i + y_{h(i)}`
/// * `S`:   `x'_i ↦ -y_i`,           `y'_i ↦ x_{v(i)}`
/// * `S⁻¹`: `x'_i ↦ y_{h(i)}`,       `y'_i ↦ -x_i`
///
/// The images are well defined modulo square boundaries, which is all the
/// homology layer needs.
pub fn transport(gen: Gen, base: &Origami, chain_on_image: &EdgeChain) -> EdgeChain {
    let n = base.squares();
    assert_eq!(chain_on_image.squares(), n);
    let h = base.h();
    let v = base.v();
    let h_inv = h.inverse();
    let mut out = EdgeChain::zero(n);
    for i in 0..n {
        let a = chain_on_image.x(i);
        if !a.is_zero() {
            match gen {
                Gen::T | Gen::TInv => out.add_x(i, a),
                Gen::S => out.add_y(i, &-a.clone()),
                Gen::SInv => out.add_y(h.apply(i), a),
            }
        }
        let b = chain_on_image.y(i);
        if !b.is_zero() {
            match gen {
                Gen::T => {
                    let j = h_inv.apply(i);
                    out.add_y(j, b);
                    out.add_x(j, &-b.clone());
                }
                Gen::TInv => {
                    out.add_x(i, b);
                    out.add_y(h.apply(i), b);
                }
                Gen::S => out.add_x(v.apply(i), b),
                Gen::SInv => out.add_x(i, &-b.clone()),
            }
        }
    }
    out
}
