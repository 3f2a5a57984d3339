//! Integer `SL(2)` matrices, generator words, and the action on origamis.
//!
//! The generators are `T = [[1,1],[0,1]]` and `S = [[0,-1],[1,0]]`. The
//! action on a surface `(h, v)` is the usual one on translation structures,
//! with the square labels carried along the recutting:
//!
//! * `T`:   `(h, v) ↦ (h, v ∘ h⁻¹)`
//! * `T⁻¹`: `(h, v) ↦ (h, v ∘ h)`
//! * `S`:   `(h, v) ↦ (v⁻¹, h)`
//! * `S⁻¹`: `(h, v) ↦ (v, h⁻¹)`
//!
//! so `S⁴` is the identity on the nose and general elements act through a
//! generator word. Homology transport along these moves lives in [`crate::chain`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use crate::error::Error;
use crate::origami::Origami;

/// A `2×2` integer matrix of determinant one, row major.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sl2zMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

/// The four generator moves used for words.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gen {
    T,
    TInv,
    S,
    SInv,
}

impl Gen {
    pub fn matrix(self) -> Sl2zMatrix {
        match self {
            Gen::T => Sl2zMatrix {
                a: 1,
                b: 1,
                c: 0,
                d: 1,
            },
            Gen::TInv => Sl2zMatrix {
                a: 1,
                b: -1,
                c: 0,
                d: 1,
            },
            Gen::S => Sl2zMatrix {
                a: 0,
                b: -1,
                c: 1,
                d: 0,
            },
            Gen::SInv => Sl2zMatrix {
                a: 0,
                b: 1,
                c: -1,
                d: 0,
            },
        }
    }

    /// Action on the permutation pair.
    pub fn act(self, o: &Origami) -> Origami {
        let (h, v) = (o.h(), o.v());
        let (h2, v2) = match self {
            Gen::T => (h.clone(), v.compose(&h.inverse())),
            Gen::TInv => (h.clone(), v.compose(h)),
            Gen::S => (v.inverse(), h.clone()),
            Gen::SInv => (v.clone(), h.inverse()),
        };
        Origami::new(h2, v2).expect("SL(2,Z) action preserves connectivity")
    }
}

impl Sl2zMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, Error> {
        if a * d - b * c != 1 {
            return Err(Error::BadMatrix(format!(
                "determinant of [[{a},{b}],[{c},{d}]] is {}, need 1",
                a * d - b * c
            )));
        }
        Ok(Sl2zMatrix { a, b, c, d })
    }

    pub fn identity() -> Self {
        Sl2zMatrix {
            a: 1,
            b: 0,
            c: 0,
            d: 1,
        }
    }

    pub fn inverse(self) -> Self {
        Sl2zMatrix {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn apply(&self, x: i64, y: i64) -> (i64, i64) {
        (self.a * x + self.b * y, self.c * x + self.d * y)
    }

    /// Writes the matrix as a generator word `g₁ g₂ ⋯ g_k` (matrix product,
    /// so `g_k` acts first on a surface).
    pub fn word(self) -> Vec<Gen> {
        // Reduce to the identity by left-multiplying with generator inverses,
        // recording the generators that rebuild the matrix.
        let mut word: Vec<Gen> = Vec::new();
        let mut m = self;
        // Euclid on the first column.
        while m.c != 0 {
            if m.a != 0 {
                let q = m.a.div_euclid(m.c);
                if q != 0 {
                    // m ← T^{-q}·m, record T^{q}
                    for _ in 0..q.unsigned_abs() {
                        word.push(if q > 0 { Gen::T } else { Gen::TInv });
                    }
                    m = Sl2zMatrix {
                        a: 1,
                        b: -q,
                        c: 0,
                        d: 1,
                    } * m;
                }
            }
            // m ← S⁻¹·m, record S; this swaps the roles of a and c
            word.push(Gen::S);
            m = Gen::SInv.matrix() * m;
        }
        // now m = ±[[1, b],[0, 1]]
        if m.a == -1 {
            // record S·S = -Id and negate
            word.push(Gen::S);
            word.push(Gen::S);
            m = Sl2zMatrix {
                a: -m.a,
                b: -m.b,
                c: -m.c,
                d: -m.d,
            };
        }
        debug_assert_eq!((m.a, m.c, m.d), (1, 0, 1));
        for _ in 0..m.b.unsigned_abs() {
            word.push(if m.b > 0 { Gen::T } else { Gen::TInv });
        }
        word
    }

    /// Acts on an origami through the generator word.
    pub fn act(self, o: &Origami) -> Origami {
        let word = self.word();
        let mut cur = o.clone();
        for g in word.iter().rev() {
            cur = g.act(&cur);
        }
        cur
    }

    pub fn is_parabolic(&self) -> bool {
        self.a + self.d == 2 && *self != Sl2zMatrix::identity()
    }
}

impl Mul for Sl2zMatrix {
    type Output = Sl2zMatrix;
    fn mul(self, rhs: Sl2zMatrix) -> Sl2zMatrix {
        Sl2zMatrix {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}

impl fmt::Display for Sl2zMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Sl2zMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A direction `(p, q)`, reduced to a canonical primitive representative:
/// `p > 0`, or `(0, 1)`. Directions that differ by sign describe the same
/// cylinder decomposition.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Direction {
    pub p: i64,
    pub q: i64,
}

impl Direction {
    pub fn new(p: i64, q: i64) -> Result<Self, Error> {
        if p == 0 && q == 0 {
            return Err(Error::BadDirection(String::from("zero vector")));
        }
        // keeps k·p·q and friends inside i64 for any realistic shear
        if p.unsigned_abs() > 1 << 16 || q.unsigned_abs() > 1 << 16 {
            return Err(Error::BadDirection(format!(
                "({p},{q}) exceeds the supported component bound 2^16"
            )));
        }
        let g = gcd(p.unsigned_abs(), q.unsigned_abs()) as i64;
        if g != 1 {
            return Err(Error::BadDirection(format!(
                "({p},{q}) is not primitive (gcd {g})"
            )));
        }
        let (mut p, mut q) = (p, q);
        if p < 0 || (p == 0 && q < 0) {
            p = -p;
            q = -q;
        }
        Ok(Direction { p, q })
    }

    pub fn is_horizontal(&self) -> bool {
        *self == Direction { p: 1, q: 0 }
    }

    pub fn is_vertical(&self) -> bool {
        *self == Direction { p: 0, q: 1 }
    }

    /// A matrix sending this direction to `(1, 0)`, chosen deterministically
    /// by the extended Euclidean algorithm.
    pub fn to_horizontal(&self) -> Sl2zMatrix {
        let (_, a, b) = ext_gcd(self.p, self.q);
        Sl2zMatrix::new(a, b, -self.q, self.p).expect("Bezout determinant")
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.p, self.q)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(g, a, b)` with `a·x + b·y = g = gcd(x, y) > 0`.
fn ext_gcd(x: i64, y: i64) -> (i64, i64, i64) {
    if y == 0 {
        if x < 0 {
            (-x, -1, 0)
        } else {
            (x, 1, 0)
        }
    } else {
        let (g, a, b) = ext_gcd(y, x.rem_euclid(y));
        (g, b, a - x.div_euclid(y) * b)
    }
}

/// The parabolic `I + sign·k·m_d` fixing direction `d`, where
/// `m_d = [[-pq, p²],[-q², pq]]` satisfies `m_d·d = 0` and `m_d² = 0`.
pub fn parabolic(dir: Direction, k: i64, sign: i64) -> Result<Sl2zMatrix, Error> {
    let (p, q) = (dir.p as i128, dir.q as i128);
    let (k, sign) = (k as i128, sign as i128);
    let entry = |v: i128| -> Result<i64, Error> {
        i64::try_from(v).map_err(|_| {
            Error::BadDirection(format!("shear {k} in direction {dir} overflows"))
        })
    };
    Sl2zMatrix::new(
        entry(1 - sign * k * p * q)?,
        entry(sign * k * p * p)?,
        entry(-sign * k * q * q)?,
        entry(1 + sign * k * p * q)?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> Origami {
        Origami::parse("h=(); v=(); n=1").unwrap()
    }

    fn mstar() -> Origami {
        Origami::parse("h=(2,3)(4,5,6); v=(1,4,2)(3,5); n=6").unwrap()
    }

    #[test]
    fn word_rebuilds_matrix() {
        let cases = [
            (1i64, 0, 0, 1),
            (1, 1, 0, 1),
            (0, -1, 1, 0),
            (1, 0, -1, 1),
            (2, 3, 1, 2),
            (-2, 3, -3, 4),
            (-7, 16, -4, 9),
            (0, 1, -1, 2),
            (-1, 0, 0, -1),
            (5, -7, -2, 3),
        ];
        for (a, b, c, d) in cases {
            let m = Sl2zMatrix::new(a, b, c, d).unwrap();
            let mut prod = Sl2zMatrix::identity();
            for g in m.word() {
                prod = prod * g.matrix();
            }
            assert_eq!(prod, m, "word failed for {m}");
        }
    }

    #[test]
    fn torus_is_fixed() {
        let t = Gen::T.act(&torus());
        assert!(t.iso(&torus()).is_some());
        let m = Sl2zMatrix::new(2, 3, 1, 2).unwrap().act(&torus());
        assert!(m.iso(&torus()).is_some());
    }

    #[test]
    fn s_has_order_four_exactly() {
        let m = mstar();
        let mut cur = m.clone();
        for _ in 0..4 {
            cur = Gen::S.act(&cur);
        }
        assert_eq!(cur, m);
    }

    #[test]
    fn st_has_order_six_up_to_iso() {
        let m = mstar();
        let st = Sl2zMatrix::new(0, -1, 1, 1).unwrap(); // S·T
        let mut cur = m.clone();
        for _ in 0..6 {
            cur = st.act(&cur);
        }
        assert!(cur.iso(&m).is_some());
    }

    #[test]
    fn action_is_functorial_up_to_iso() {
        let m = mstar();
        let g1 = Sl2zMatrix::new(1, 2, 1, 3).unwrap();
        let g2 = Sl2zMatrix::new(0, -1, 1, -2).unwrap();
        let lhs = (g1 * g2).act(&m);
        let rhs = g1.act(&g2.act(&m));
        assert!(lhs.iso(&rhs).is_some());
    }

    #[test]
    fn directions_normalize() {
        assert_eq!(Direction::new(-1, 0).unwrap(), Direction { p: 1, q: 0 });
        assert_eq!(Direction::new(0, -1).unwrap(), Direction { p: 0, q: 1 });
        assert!(Direction::new(2, 2).is_err());
        assert!(Direction::new(0, 0).is_err());
        for (p, q) in [(1, 0), (0, 1), (1, 1), (2, 1), (1, -3), (3, -2)] {
            let d = Direction::new(p, q).unwrap();
            let m = d.to_horizontal();
            assert_eq!(m.apply(d.p, d.q), (1, 0));
        }
    }

    #[test]
    fn parabolics() {
        let d = Direction::new(1, 0).unwrap();
        assert_eq!(parabolic(d, 6, 1).unwrap(), Sl2zMatrix::new(1, 6, 0, 1).unwrap());
        let d = Direction::new(0, 1).unwrap();
        assert_eq!(parabolic(d, 6, -1).unwrap(), Sl2zMatrix::new(1, 0, 6, 1).unwrap());
        let d = Direction::new(1, 1).unwrap();
        assert_eq!(parabolic(d, 3, 1).unwrap(), Sl2zMatrix::new(-2, 3, -3, 4).unwrap());
        let d = Direction::new(2, 1).unwrap();
        assert_eq!(parabolic(d, 4, 1).unwrap(), Sl2zMatrix::new(-7, 16, -4, 9).unwrap());
    }
}
