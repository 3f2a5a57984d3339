//! Zariski-density certificates for subgroups of `Sp(2m)`.
//!
//! Given rational symplectic generators, the certificate exhibits a basis of
//! the full Lie algebra `sp(2m)` inside the Lie algebra of the Zariski
//! closure: logarithms of the unipotent generators, their conjugates by
//! short generator words, and iterated brackets. Since `sp(2m)` has dimension
//! `m(2m+1)`, reaching that dimension proves the closure is all of `Sp(2m)`.
//! Everything is exact; a `dense` verdict is a proof, `inconclusive` is not a
//! disproof.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{internal, Error};
use crate::matrix::QMat;
use crate::Rat;

/// Outcome of the closure computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Dense,
    Inconclusive,
}

/// Options for [`lie_closure`].
#[derive(Clone, Copy, Debug)]
pub struct DensityOptions {
    /// Cap on the conjugating word length (the breadth-first search stops
    /// earlier as soon as the span is stable).
    pub max_word_length: usize,
}

impl Default for DensityOptions {
    fn default() -> Self {
        DensityOptions { max_word_length: 8 }
    }
}

/// An exact density certificate.
#[derive(Clone, Debug)]
pub struct DensityCertificate {
    /// Half-rank `m` of the ambient `Sp(2m)`.
    pub m: usize,
    /// The invariant antisymmetric form the generators preserve.
    pub form: QMat,
    pub verdict: Verdict,
    pub dimension: usize,
    pub expected_dimension: usize,
    /// Basis of the computed Lie subalgebra.
    pub algebra_basis: Vec<QMat>,
    /// How each basis element was produced, e.g. `conj(g1·g2, log g0)` or
    /// `[b2, b5]`.
    pub witness_log: Vec<String>,
    /// What a `dense` verdict certifies.
    pub statement: String,
}

/// `(M - I)^{size} = 0`?
pub fn is_unipotent(m: &QMat) -> bool {
    if m.nrows() != m.ncols() {
        return false;
    }
    let n = m.nrows();
    let nil = m - &QMat::identity(n);
    nil.pow(n).is_zero()
}

/// Exact logarithm of a unipotent matrix: the finite series
/// `Σ_{k≥1} (-1)^{k+1} (M - I)^k / k`.
pub fn nilpotent_log(m: &QMat) -> Result<QMat, Error> {
    if !is_unipotent(m) {
        return Err(Error::BadMatrix(String::from(
            "logarithm requested for a non-unipotent matrix",
        )));
    }
    let n = m.nrows();
    let nil = m - &QMat::identity(n);
    let mut acc = QMat::zeros(n, n);
    let mut power = QMat::identity(n);
    for k in 1..=n {
        power = &power * &nil;
        if power.is_zero() {
            break;
        }
        let coeff = Rat::new(
            if k % 2 == 1 {
                crate::Int::from(1)
            } else {
                crate::Int::from(-1)
            },
            crate::Int::from(k as i64),
        );
        acc = &acc + &power.scale(&coeff);
    }
    Ok(acc)
}

/// Exact exponential of a nilpotent matrix.
pub fn exp_nilpotent(l: &QMat) -> Result<QMat, Error> {
    let n = l.nrows();
    if n != l.ncols() {
        return Err(Error::BadMatrix(String::from("exp of a non-square matrix")));
    }
    if !l.pow(n).is_zero() {
        return Err(Error::BadMatrix(String::from(
            "exp requested for a non-nilpotent matrix",
        )));
    }
    let mut acc = QMat::identity(n);
    let mut term = QMat::identity(n);
    let mut factorial = Rat::new(crate::Int::from(1), crate::Int::from(1));
    for k in 1..=n {
        term = &term * l;
        if term.is_zero() {
            break;
        }
        factorial *= Rat::new(crate::Int::from(1), crate::Int::from(k as i64));
        acc = &acc + &term.scale(&factorial);
    }
    Ok(acc)
}

/// Solves for the space of antisymmetric forms `J` with `gᵀ J g = J` for all
/// generators, returning a deterministic nonzero, nondegenerate solution.
pub fn derive_invariant_form(generators: &[QMat]) -> Result<QMat, Error> {
    let n = generators
        .first()
        .ok_or_else(|| Error::BadMatrix(String::from("no generators")))?
        .nrows();
    // unknowns: J_{ij} for i < j (antisymmetric)
    let unknowns: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let expand = |coords: &[Rat]| -> QMat {
        let mut j = QMat::zeros(n, n);
        for (k, &(a, b)) in unknowns.iter().enumerate() {
            j.set(a, b, coords[k].clone());
            j.set(b, a, -coords[k].clone());
        }
        j
    };
    // rows: for each generator, each (i, j): (gᵀ J g - J)_{ij} = 0
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for g in generators {
        if g.nrows() != n || g.ncols() != n {
            return Err(Error::BadMatrix(String::from("generators of mixed sizes")));
        }
        for i in 0..n {
            for j in 0..n {
                let mut row = Vec::with_capacity(unknowns.len());
                for &(a, b) in &unknowns {
                    // coefficient of J_{ab} in (gᵀ J g - J)_{ij}
                    let mut coef = g.get(a, i) * g.get(b, j) - g.get(b, i) * g.get(a, j);
                    if (a, b) == (i, j) {
                        coef -= Rat::new(crate::Int::from(1), crate::Int::from(1));
                    }
                    if (b, a) == (i, j) {
                        coef += Rat::new(crate::Int::from(1), crate::Int::from(1));
                    }
                    row.push(coef);
                }
                rows.push(row);
            }
        }
    }
    let system = QMat::from_fn(rows.len(), unknowns.len(), |r, c| rows[r][c].clone());
    let kernel = system.nullspace();
    for coords in &kernel {
        let j = expand(coords);
        if !j.det().is_zero() {
            return Ok(j);
        }
    }
    Err(Error::BadMatrix(String::from(
        "generators preserve no nondegenerate antisymmetric form",
    )))
}

/// Rational span with exact membership tests.
struct Span {
    dim_ambient: usize,
    /// reduced rows with their pivot columns, kept sorted by pivot
    reduced: Vec<(usize, Vec<Rat>)>,
}

impl Span {
    fn new(dim_ambient: usize) -> Self {
        Span {
            dim_ambient,
            reduced: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.reduced.len()
    }

    fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.reduced {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (x, r) in v.iter_mut().zip(row.iter()) {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Inserts if independent; returns whether the span grew.
    fn insert(&mut self, v: &[Rat]) -> bool {
        let mut r = self.reduce(v);
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[pivot].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        // back-substitute into existing rows
        for (_, row) in self.reduced.iter_mut() {
            if !row[pivot].is_zero() {
                let f = row[pivot].clone();
                for (x, y) in row.iter_mut().zip(r.iter()) {
                    *x -= &f * y;
                }
            }
        }
        self.reduced.push((pivot, r));
        self.reduced.sort_by_key(|(p, _)| *p);
        debug_assert!(self.reduced.len() <= self.dim_ambient);
        true
    }
}

/// Exact Lie-algebra closure of the logs of the unipotent generators under
/// conjugation by generator words and brackets.
pub fn lie_closure(
    generators: &[QMat],
    form: Option<QMat>,
    options: DensityOptions,
) -> Result<DensityCertificate, Error> {
    if generators.is_empty() {
        return Err(Error::BadMatrix(String::from("no generators")));
    }
    let n = generators[0].nrows();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::BadMatrix(format!(
            "generators must be 2m×2m, got {n}×{n}"
        )));
    }
    for g in generators {
        if g.nrows() != n || g.ncols() != n {
            return Err(Error::BadMatrix(String::from("generators of mixed sizes")));
        }
    }
    let m = n / 2;
    let form = match form {
        Some(j) => {
            if j.nrows() != n || j.ncols() != n || j.det().is_zero() {
                return Err(Error::BadMatrix(String::from(
                    "form must be nondegenerate of matching size",
                )));
            }
            if j.transpose() != -&j {
                return Err(Error::BadMatrix(String::from("form must be antisymmetric")));
            }
            j
        }
        None => derive_invariant_form(generators)?,
    };
    for (i, g) in generators.iter().enumerate() {
        if &(&g.transpose() * &form) * g != form {
            return Err(Error::BadMatrix(format!(
                "generator {} is not symplectic for the form",
                i + 1
            )));
        }
    }
    let expected_dimension = m * (2 * m + 1);
    let statement = String::from(
        "a dense verdict proves Zariski density in Sp(2m) of the subgroup generated by the \
         unipotent parts of the generators together with their conjugates; inconclusive is \
         not a disproof",
    );

    // seeds: logs of the unipotent generators
    let mut seeds: Vec<(QMat, String)> = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        if is_unipotent(g) && !(g - &QMat::identity(n)).is_zero() {
            seeds.push((nilpotent_log(g)?, format!("log g{}", i + 1)));
        }
    }
    if seeds.is_empty() {
        return Ok(DensityCertificate {
            m,
            form,
            verdict: Verdict::Inconclusive,
            dimension: 0,
            expected_dimension,
            algebra_basis: Vec::new(),
            witness_log: Vec::new(),
            statement,
        });
    }

    let in_sp =
        |l: &QMat| -> bool { &(&l.transpose() * &form) + &(&form * l) == QMat::zeros(n, n) };

    let mut span = Span::new(n * n);
    let mut basis: Vec<QMat> = Vec::new();
    let mut witnesses: Vec<String> = Vec::new();
    let add = |span: &mut Span,
               basis: &mut Vec<QMat>,
               witnesses: &mut Vec<String>,
               cand: QMat,
               witness: String|
     -> Result<bool, Error> {
        if !in_sp(&cand) {
            return Err(internal("closure element escaped sp(J)"));
        }
        if span.insert(&cand.flatten()) {
            basis.push(cand);
            witnesses.push(witness);
            Ok(true)
        } else {
            Ok(false)
        }
    };

    for (l, w) in &seeds {
        add(&mut span, &mut basis, &mut witnesses, l.clone(), w.clone())?;
    }

    // generator alphabet with inverses
    let mut alphabet: Vec<(QMat, String)> = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        alphabet.push((g.clone(), format!("g{}", i + 1)));
    }
    for (i, g) in generators.iter().enumerate() {
        let inv = g
            .inverse()
            .ok_or_else(|| Error::BadMatrix(String::from("singular generator")))?;
        alphabet.push((inv, format!("g{}^-1", i + 1)));
    }

    let bracket_close = |span: &mut Span,
                         basis: &mut Vec<QMat>,
                         witnesses: &mut Vec<String>|
     -> Result<(), Error> {
        let mut i = 0;
        while i < basis.len() {
            let mut j = 0;
            while j < i {
                let br = basis[i].bracket(&basis[j]);
                if !br.is_zero() && !span.contains(&br.flatten()) {
                    let w = format!("[b{}, b{}]", i + 1, j + 1);
                    if !in_sp(&br) {
                        return Err(internal("bracket escaped sp(J)"));
                    }
                    span.insert(&br.flatten());
                    basis.push(br);
                    witnesses.push(w);
                }
                j += 1;
            }
            i += 1;
        }
        Ok(())
    };

    let stable = |span: &Span, basis: &[QMat]| -> bool {
        for l in basis {
            for (g, _) in &alphabet {
                let conj = &(g * l) * &g.inverse().expect("alphabet is invertible");
                if !span.contains(&conj.flatten()) {
                    return false;
                }
            }
        }
        true
    };

    bracket_close(&mut span, &mut basis, &mut witnesses)?;

    // breadth-first over conjugating words
    let mut frontier: Vec<(QMat, String)> = vec![(QMat::identity(n), String::new())];
    'outer: for _depth in 1..=options.max_word_length {
        if span.len() == expected_dimension || stable(&span, &basis) {
            break 'outer;
        }
        let mut next = Vec::new();
        for (w_mat, w_str) in &frontier {
            for (g, g_str) in &alphabet {
                let mat = w_mat * g;
                let name = if w_str.is_empty() {
                    g_str.clone()
                } else {
                    format!("{w_str}·{g_str}")
                };
                let mat_inv = mat
                    .inverse()
                    .ok_or_else(|| internal("word matrix is singular"))?;
                for (l, l_str) in &seeds {
                    let conj = &(&mat * l) * &mat_inv;
                    add(
                        &mut span,
                        &mut basis,
                        &mut witnesses,
                        conj,
                        format!("conj({name}, {l_str})"),
                    )?;
                }
                next.push((mat, name));
                if span.len() == expected_dimension {
                    bracket_close(&mut span, &mut basis, &mut witnesses)?;
                    break 'outer;
                }
            }
        }
        bracket_close(&mut span, &mut basis, &mut witnesses)?;
        frontier = next;
    }
    bracket_close(&mut span, &mut basis, &mut witnesses)?;

    let dimension = span.len();
    let verdict = if dimension == expected_dimension {
        Verdict::Dense
    } else {
        Verdict::Inconclusive
    };
    Ok(DensityCertificate {
        m,
        form,
        verdict,
        dimension,
        expected_dimension,
        algebra_basis: basis,
        witness_log: witnesses,
        statement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_generators_are_dense() {
        let t = QMat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let u = QMat::from_i64_rows(&[&[1, 0], &[1, 1]]);
        let cert = lie_closure(&[t, u], None, DensityOptions::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::Dense);
        assert_eq!(cert.dimension, 3);
        // derived form is a multiple of the standard symplectic form
        assert!(!cert.form.det().is_zero());
    }

    #[test]
    fn identity_alone_is_inconclusive() {
        let id = QMat::identity(2);
        let cert = lie_closure(&[id], None, DensityOptions::default());
        // the identity preserves every form; derive_invariant_form picks one
        let cert = cert.unwrap();
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        assert_eq!(cert.dimension, 0);
    }

    #[test]
    fn log_exp_round_trip() {
        let m = QMat::from_i64_rows(&[&[1, 2, 3], &[0, 1, 4], &[0, 0, 1]]);
        let l = nilpotent_log(&m).unwrap();
        assert_eq!(exp_nilpotent(&l).unwrap(), m);
        assert!(is_unipotent(&m));
        let neg = QMat::from_i64_rows(&[&[-1, 0], &[0, -1]]);
        assert!(!is_unipotent(&neg));
        assert!(nilpotent_log(&neg).is_err());
    }

    #[test]
    fn single_parabolic_is_not_dense() {
        let t = QMat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let j = QMat::from_i64_rows(&[&[0, 1], &[-1, 0]]);
        let cert = lie_closure(&[t], Some(j), DensityOptions::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        assert_eq!(cert.dimension, 1);
    }

    #[test]
    fn rejects_non_symplectic() {
        let g = QMat::from_i64_rows(&[&[2, 0], &[0, 1]]);
        let j = QMat::from_i64_rows(&[&[0, 1], &[-1, 0]]);
        assert!(matches!(
            lie_closure(&[g], Some(j), DensityOptions::default()),
            Err(Error::BadMatrix(_))
        ));
    }

    #[test]
    fn dimension_is_monotone_in_the_word_bound() {
        let t = QMat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let u = QMat::from_i64_rows(&[&[1, 0], &[1, 1]]);
        let mut last = 0;
        for cap in 1..=4 {
            let cert = lie_closure(
                &[t.clone(), u.clone()],
                None,
                DensityOptions {
                    max_word_length: cap,
                },
            )
            .unwrap();
            assert!(cert.dimension >= last);
            last = cert.dimension;
        }
        assert_eq!(last, 3);
    }

    #[test]
    fn mixed_sizes_rejected() {
        let a = QMat::identity(2);
        let b = QMat::identity(4);
        assert!(lie_closure(&[a, b], None, DensityOptions::default()).is_err());
        let odd = QMat::identity(3);
        assert!(lie_closure(&[odd], None, DensityOptions::default()).is_err());
    }
}
