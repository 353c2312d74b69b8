//! Exact linear algebra over the rationals and over prime fields.
//!
//! Rational rank and determinant use fraction-free (Bareiss) elimination on
//! integer rows, so no intermediate value is ever rounded. Prime-field
//! arithmetic is plain Gaussian elimination with `u128` products.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// The Mersenne prime 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("NonSquare: determinant of a {rows}x{cols} matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("a denominator vanishes modulo {0}")]
    NotReducible(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Checked constructor for a prime field.
    pub fn prime(p: u64) -> Result<Field, LinAlgError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(LinAlgError::NotPrime(p))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn from_i64(v: i64, field: Field) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Residue {
                value: reduce_i64(v, p),
                modulus: p,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Entries {
    Rational(Vec<BigRational>),
    Prime { p: u64, data: Vec<u64> },
}

/// Dense row-major matrix over `Q` or `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

/// Outcome of fraction-free elimination over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BareissTrace {
    pub rank: usize,
    /// Determinant of the denominator-cleared integer matrix (square input only).
    pub integer_determinant: Option<BigInt>,
    /// Product of the per-row denominator multipliers.
    pub row_scale: BigInt,
    /// False if some division in the elimination left a remainder.
    pub exact_divisions: bool,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        let entries = match field {
            Field::Rational => Entries::Rational(vec![BigRational::zero(); rows * cols]),
            Field::Prime(p) => Entries::Prime {
                p,
                data: vec![0; rows * cols],
            },
        };
        ExactMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.set_i64(i, i, 1);
        }
        m
    }

    pub fn from_i64(
        rows: usize,
        cols: usize,
        values: &[i64],
        field: Field,
    ) -> Result<Self, LinAlgError> {
        if values.len() != rows * cols {
            return Err(LinAlgError::Shape {
                expected: rows * cols,
                got: values.len(),
            });
        }
        let entries = match field {
            Field::Rational => Entries::Rational(values.iter().map(|&v| rat(v)).collect()),
            Field::Prime(p) => Entries::Prime {
                p,
                data: values.iter().map(|&v| reduce_i64(v, p)).collect(),
            },
        };
        Ok(ExactMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Build from a list of equal-length integer rows. The column count of an
    /// empty row list is taken from `cols`.
    pub fn from_i64_rows(
        rows: &[Vec<i64>],
        cols: usize,
        field: Field,
    ) -> Result<Self, LinAlgError> {
        let mut flat = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinAlgError::Shape {
                    expected: cols,
                    got: r.len(),
                });
            }
            flat.extend_from_slice(r);
        }
        Self::from_i64(rows.len(), cols, &flat, field)
    }

    pub fn from_rationals(
        rows: usize,
        cols: usize,
        values: Vec<BigRational>,
    ) -> Result<Self, LinAlgError> {
        if values.len() != rows * cols {
            return Err(LinAlgError::Shape {
                expected: rows * cols,
                got: values.len(),
            });
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries: Entries::Rational(values),
        })
    }

    /// Residues are reduced modulo `p` on entry. `p` is not checked for primality.
    pub fn from_residues(
        rows: usize,
        cols: usize,
        values: Vec<u64>,
        p: u64,
    ) -> Result<Self, LinAlgError> {
        if values.len() != rows * cols {
            return Err(LinAlgError::Shape {
                expected: rows * cols,
                got: values.len(),
            });
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries: Entries::Prime {
                p,
                data: values.into_iter().map(|v| v % p).collect(),
            },
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        match &self.entries {
            Entries::Rational(_) => Field::Rational,
            Entries::Prime { p, .. } => Field::Prime(*p),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let k = r * self.cols + c;
        match &self.entries {
            Entries::Rational(v) => Scalar::Rational(v[k].clone()),
            Entries::Prime { p, data } => Scalar::Residue {
                value: data[k],
                modulus: *p,
            },
        }
    }

    pub fn set_i64(&mut self, r: usize, c: usize, value: i64) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let k = r * self.cols + c;
        match &mut self.entries {
            Entries::Rational(v) => v[k] = rat(value),
            Entries::Prime { p, data } => data[k] = reduce_i64(value, *p),
        }
    }

    pub fn set_rational(
        &mut self,
        r: usize,
        c: usize,
        value: BigRational,
    ) -> Result<(), LinAlgError> {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let k = r * self.cols + c;
        match &mut self.entries {
            Entries::Rational(v) => v[k] = value,
            Entries::Prime { p, data } => data[k] = reduce_rational(&value, *p)?,
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let (r, c) = (self.rows, self.cols);
        let entries = match &self.entries {
            Entries::Rational(v) => {
                Entries::Rational((0..r * c).map(|k| v[(k % r) * c + k / r].clone()).collect())
            }
            Entries::Prime { p, data } => Entries::Prime {
                p: *p,
                data: (0..r * c).map(|k| data[(k % r) * c + k / r]).collect(),
            },
        };
        ExactMatrix {
            rows: c,
            cols: r,
            entries,
        }
    }

    pub fn is_skew_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let n = self.rows;
        match &self.entries {
            Entries::Rational(v) => {
                (0..n).all(|i| (0..n).all(|j| v[i * n + j] == -v[j * n + i].clone()))
            }
            Entries::Prime { p, data } => {
                (0..n).all(|i| (0..n).all(|j| (data[i * n + j] + data[j * n + i]) % p == 0))
            }
        }
    }

    /// Image of a rational matrix in `F_p`.
    pub fn reduce_mod(&self, p: u64) -> Result<Self, LinAlgError> {
        match &self.entries {
            Entries::Prime { p: q, data } if *q == p => Ok(self.clone()),
            Entries::Prime { .. } => Err(LinAlgError::NotReducible(p)),
            Entries::Rational(v) => {
                let data = v
                    .iter()
                    .map(|q| reduce_rational(q, p))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ExactMatrix {
                    rows: self.rows,
                    cols: self.cols,
                    entries: Entries::Prime { p, data },
                })
            }
        }
    }

    pub fn rank(&self) -> usize {
        match &self.entries {
            Entries::Rational(_) => self.bareiss().rank,
            Entries::Prime { p, data } => eliminate_mod(data.clone(), self.rows, self.cols, *p).0,
        }
    }

    pub fn determinant(&self) -> Result<Scalar, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        match &self.entries {
            Entries::Rational(_) => {
                let t = self.bareiss();
                let d = t.integer_determinant.unwrap_or_else(BigInt::zero);
                Ok(Scalar::Rational(BigRational::new(d, t.row_scale)))
            }
            Entries::Prime { p, data } => {
                let (_, det) = eliminate_mod(data.clone(), self.rows, self.cols, *p);
                Ok(Scalar::Residue {
                    value: det,
                    modulus: *p,
                })
            }
        }
    }

    /// Fraction-free elimination of a rational matrix after clearing each row's
    /// denominators. Prime-field matrices are lifted to `0..p` representatives.
    pub fn bareiss(&self) -> BareissTrace {
        let (rows, cols) = (self.rows, self.cols);
        let mut scale = BigInt::one();
        let mut a: Vec<BigInt> = Vec::with_capacity(rows * cols);
        match &self.entries {
            Entries::Rational(v) => {
                for r in 0..rows {
                    let row = &v[r * cols..(r + 1) * cols];
                    let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                    for q in row {
                        a.push(q.numer() * (&l / q.denom()));
                    }
                    scale *= l;
                }
            }
            Entries::Prime { data, .. } => a.extend(data.iter().map(|&x| BigInt::from(x))),
        }

        let mut prev = BigInt::one();
        let mut negate = false;
        let mut exact = true;
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    a.swap(piv * cols + j, r * cols + j);
                }
                negate = !negate;
            }
            let pivot = a[r * cols + c].clone();
            for i in r + 1..rows {
                let lead = a[i * cols + c].clone();
                for j in c + 1..cols {
                    let num = &pivot * &a[i * cols + j] - &lead * &a[r * cols + j];
                    let (q, rem) = num.div_rem(&prev);
                    if !rem.is_zero() {
                        exact = false;
                    }
                    a[i * cols + j] = q;
                }
                a[i * cols + c] = BigInt::zero();
            }
            prev = pivot;
            r += 1;
        }

        let integer_determinant = (rows == cols).then(|| {
            if r < rows {
                BigInt::zero()
            } else if rows == 0 {
                BigInt::one()
            } else {
                let d = a[rows * cols - 1].clone();
                if negate {
                    -d
                } else {
                    d
                }
            }
        });
        BareissTrace {
            rank: r,
            integer_determinant,
            row_scale: scale,
            exact_divisions: exact,
        }
    }

    /// Integer entries of a rational matrix, if every entry is integral and fits.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        match &self.entries {
            Entries::Rational(v) => v
                .iter()
                .map(|q| {
                    if q.is_integer() {
                        i64::try_from(q.to_integer()).ok()
                    } else {
                        None
                    }
                })
                .collect(),
            Entries::Prime { .. } => None,
        }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn reduce_i64(v: i64, p: u64) -> u64 {
    (v as i128).rem_euclid(p as i128) as u64
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let m = v.mod_floor(&BigInt::from(p));
    u64::try_from(m).expect("residue fits in u64")
}

fn reduce_rational(q: &BigRational, p: u64) -> Result<u64, LinAlgError> {
    let d = reduce_bigint(q.denom(), p);
    if d == 0 {
        return Err(LinAlgError::NotReducible(p));
    }
    Ok(mul_mod(reduce_bigint(q.numer(), p), inv_mod(d, p), p))
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Rank and determinant (zero unless square and full rank) modulo `p`.
fn eliminate_mod(mut a: Vec<u64>, rows: usize, cols: usize, p: u64) -> (usize, u64) {
    let mut det = 1u64 % p;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
            det = (p - det) % p;
        }
        let pivot = a[r * cols + c];
        det = mul_mod(det, pivot, p);
        let inv = inv_mod(pivot, p);
        for i in r + 1..rows {
            let f = mul_mod(a[i * cols + c], inv, p);
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = mul_mod(f, a[r * cols + j], p);
                a[i * cols + j] = (a[i * cols + j] + p - sub) % p;
            }
        }
        r += 1;
    }
    if rows != cols || r < rows {
        det = 0;
    }
    (r, det)
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for w in WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for w in WITNESSES {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: usize, cols: usize, v: &[i64]) -> ExactMatrix {
        ExactMatrix::from_i64(rows, cols, v, Field::Rational).unwrap()
    }

    #[test]
    fn path_rows_have_rank_two() {
        let m = q(2, 3, &[-1, -1, 0, 0, -1, -1]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.reduce_mod(DEFAULT_PRIME).unwrap().rank(), 2);
    }

    #[test]
    fn contact_matrix_of_one_solid_edge() {
        let m = q(4, 4, &[0, 1, 0, 1, -1, 0, 0, 1, 0, 0, 0, 1, -1, -1, -1, 0]);
        assert_eq!(
            m.determinant().unwrap(),
            Scalar::from_i64(1, Field::Rational)
        );
        let mp = m.reduce_mod(7).unwrap();
        assert_eq!(
            mp.determinant().unwrap(),
            Scalar::from_i64(1, Field::Prime(7))
        );
    }

    #[test]
    fn non_square_determinant_is_an_error() {
        let m = q(2, 3, &[1, 2, 3, 4, 5, 6]);
        assert_eq!(
            m.determinant(),
            Err(LinAlgError::NonSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn rational_entries_clear_denominators() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let m =
            ExactMatrix::from_rationals(2, 2, vec![half.clone(), rat(1), rat(3), half]).unwrap();
        // 1/4 - 3
        let expect = BigRational::new(BigInt::from(-11), BigInt::from(4));
        assert_eq!(m.determinant().unwrap(), Scalar::Rational(expect));
    }

    #[test]
    fn row_swap_flips_sign() {
        let m = q(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]);
        assert_eq!(
            m.determinant().unwrap(),
            Scalar::from_i64(-1, Field::Rational)
        );
        let mp = m.reduce_mod(11).unwrap();
        assert_eq!(
            mp.determinant().unwrap(),
            Scalar::from_i64(-1, Field::Prime(11))
        );
    }

    #[test]
    fn rank_with_skipped_columns() {
        let m = q(3, 4, &[0, 1, 2, 3, 0, 2, 4, 6, 0, 0, 0, 5]);
        assert_eq!(m.rank(), 2);
        assert!(m.bareiss().exact_divisions);
    }

    #[test]
    fn transpose_and_skew() {
        let m = q(3, 3, &[0, 0, 1, 0, 0, 1, -1, -1, 0]);
        assert!(m.is_skew_symmetric());
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn primes() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(561));
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert_eq!(Field::prime(15), Err(LinAlgError::NotPrime(15)));
    }

    #[test]
    fn empty_matrix() {
        let m = q(0, 0, &[]);
        assert_eq!(m.rank(), 0);
        assert_eq!(
            m.determinant().unwrap(),
            Scalar::from_i64(1, Field::Rational)
        );
    }
}
