//! Hermite and Smith normal forms with unimodular witnesses.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Column-style Hermite normal form `m · u = h`.
///
/// `h` is in column echelon form: the pivot of column `j` (for `j < rank`) sits in
/// row `pivot_rows[j]`, pivot rows strictly increase, entries above a pivot are
/// zero, the pivot is positive and every entry to the left of a pivot in its row
/// lies in `[0, pivot)`. Columns `rank..` are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivot_rows: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

/// Computes the canonical column HNF of `m` together with a unimodular `u`.
pub fn hermite_normal_form(m: &IntMatrix) -> HermiteForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);
    let mut pivot_rows = Vec::new();
    let mut p = 0;

    for i in 0..rows {
        if p == cols {
            break;
        }
        for j in p + 1..cols {
            if h[(i, j)].is_zero() {
                continue;
            }
            if h[(i, p)].is_zero() {
                h.swap_cols(p, j);
                u.swap_cols(p, j);
                continue;
            }
            let a = h[(i, p)].clone();
            let b = h[(i, j)].clone();
            if b.is_multiple_of(&a) {
                let q = -(&b / &a);
                h.add_col_multiple(j, p, &q);
                u.add_col_multiple(j, p, &q);
                continue;
            }
            let eg = a.extended_gcd(&b);
            let (g, x, y) = if eg.gcd.is_negative() {
                (-eg.gcd, -eg.x, -eg.y)
            } else {
                (eg.gcd, eg.x, eg.y)
            };
            let c = -(&b / &g);
            let d = &a / &g;
            let t = [&x, &y, &c, &d];
            h.combine_cols(p, j, t);
            u.combine_cols(p, j, t);
        }
        if h[(i, p)].is_zero() {
            continue;
        }
        if h[(i, p)].is_negative() {
            h.negate_col(p);
            u.negate_col(p);
        }
        let pivot = h[(i, p)].clone();
        for j in 0..p {
            let q = h[(i, j)].div_floor(&pivot);
            if !q.is_zero() {
                let q = -q;
                h.add_col_multiple(j, p, &q);
                u.add_col_multiple(j, p, &q);
            }
        }
        pivot_rows.push(i);
        p += 1;
    }

    HermiteForm { h, u, pivot_rows }
}

/// Smith normal form `u · m · v = s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The non-zero diagonal entries `d₁ | d₂ | … | d_r`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let r = self.s.rows().min(self.s.cols());
        (0..r)
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn min_nonzero(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_nonzero(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let pivot = s[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&s[(i, t)] / &pivot);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&s[(t, j)] / &pivot);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                // A remainder smaller than the pivot survives in row or column t.
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !s[(i, t)].is_zero() && s[(i, t)].abs() < s[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !s[(t, j)].is_zero() && s[(t, j)].abs() < s[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    s.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                } else if best.1 != t {
                    s.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithForm { s, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn m(cols: usize, rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::from_rows(cols, &rows)
    }

    fn check_hnf(a: &IntMatrix) -> HermiteForm {
        let hf = hermite_normal_form(a);
        assert_eq!(&(a * &hf.u), &hf.h);
        assert!(hf.u.is_unimodular());
        for (j, &r) in hf.pivot_rows.iter().enumerate() {
            assert!(hf.h[(r, j)].is_positive());
            for i in 0..r {
                assert!(hf.h[(i, j)].is_zero());
            }
            for jj in 0..j {
                assert!(!hf.h[(r, jj)].is_negative() && hf.h[(r, jj)] < hf.h[(r, j)]);
            }
        }
        for j in hf.rank()..a.cols() {
            assert!((0..a.rows()).all(|i| hf.h[(i, j)].is_zero()));
        }
        hf
    }

    #[test]
    fn hnf_identity_and_diagonal() {
        let id = IntMatrix::identity(2);
        let hf = check_hnf(&id);
        assert_eq!(hf.h, id);
        assert_eq!(hf.u, id);
        let d = m(2, vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(check_hnf(&d).h, d);
    }

    #[test]
    fn hnf_of_1234() {
        let hf = check_hnf(&m(2, vec![vec![1, 2], vec![3, 4]]));
        assert_eq!(hf.h, m(2, vec![vec![1, 0], vec![1, 2]]));
        assert_eq!(hf.h.determinant().abs(), BigInt::from(2));
    }

    #[test]
    fn hnf_empty_and_rank_deficient() {
        let e = IntMatrix::zeros(0, 0);
        assert_eq!(check_hnf(&e).rank(), 0);
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(check_hnf(&z).rank(), 0);
        let r = check_hnf(&m(3, vec![vec![2, 4, 6], vec![1, 2, 3]]));
        assert_eq!(r.rank(), 1);
        assert_eq!(r.pivot_rows, vec![0]);
    }

    #[test]
    fn snf_examples() {
        let s = smith_normal_form(&m(2, vec![vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
        let z = smith_normal_form(&IntMatrix::zeros(2, 2));
        assert_eq!(z.rank(), 0);
        assert!(z.s.is_zero());
        let two = smith_normal_form(&m(2, vec![vec![2, 0], vec![0, 2]]));
        assert_eq!(two.invariant_factors(), vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn snf_identity_holds() {
        let a = m(3, vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let sf = smith_normal_form(&a);
        assert_eq!(&(&sf.u * &a) * &sf.v, sf.s);
        assert_eq!(
            sf.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
    }
}
