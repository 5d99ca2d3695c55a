//! Exact row spaces over ℚ and projection onto the quotient.
//!
//! Candidate basis rows are found by elimination modulo a 61-bit prime, then
//! the candidates are reduced exactly with fraction-free Gauss–Jordan
//! (Bareiss) elimination over `BigInt`. Every input row is afterwards checked
//! to lie in the exact span; a row that does not (possible only if the prime
//! divides some minor) is added and the exact step repeated.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

const P: u64 = (1u64 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn bigint_mod(x: &BigInt) -> u64 {
    let m = x.mod_floor(&BigInt::from(P));
    m.to_u64().expect("reduced")
}

fn q_mod(x: &Q) -> Option<u64> {
    let d = bigint_mod(x.denom());
    if d == 0 {
        return None;
    }
    Some(mulmod(bigint_mod(x.numer()), powmod(d, P - 2)))
}

/// A sparse rational vector: `(column, value)` pairs with distinct columns.
pub type SparseVec = Vec<(usize, Q)>;

/// An exact subspace of `ℚ^n`, stored as `d · RREF`.
#[derive(Clone, Debug)]
pub struct Subspace {
    ncols: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<BigInt>>,
    d: BigInt,
    quotient_index: Vec<Option<usize>>,
    pivot_row: Vec<Option<usize>>,
}

/// Primitive integer row proportional to `v`.
fn integer_row(ncols: usize, v: &SparseVec) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for (_, c) in v {
        lcm = lcm.lcm(c.denom());
    }
    let mut row = vec![BigInt::zero(); ncols];
    for (j, c) in v {
        row[*j] += c.numer() * (&lcm / c.denom());
    }
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
    row
}

/// Fraction-free Gauss–Jordan elimination; returns pivot columns, the
/// reduced rows (each pivot equal to `d`, zeros in other pivot columns) and `d`.
pub fn bareiss_rref(mut m: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<usize>, Vec<Vec<BigInt>>, BigInt) {
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = vec![];
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        let piv = m[r][col].clone();
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[col].clone();
            for j in 0..ncols {
                if j == col {
                    continue;
                }
                let num = &piv * &row[j] - &f * &pivot_row[j];
                let (qt, rem) = num.div_rem(&prev);
                assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = qt;
            }
            row[col] = BigInt::zero();
        }
        // Earlier pivot rows were scaled by piv/prev too; their pivot entries follow.
        prev = piv;
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    // All pivot entries now equal the last pivot `prev` (up to the rows touched).
    for (k, &c) in pivots.iter().enumerate() {
        debug_assert_eq!(m[k][c], prev);
    }
    (pivots, m, prev)
}

impl Subspace {
    /// The span of `rows` in `ℚ^ncols`. Also returns indices of input rows forming a basis.
    pub fn span(ncols: usize, rows: &[SparseVec], max_dim: Option<usize>) -> Result<(Subspace, Vec<usize>)> {
        if let Some(limit) = max_dim {
            if ncols > limit {
                return Err(Error::Resource(format!(
                    "word space of dimension {ncols} exceeds the limit {limit}"
                )));
            }
        }
        let mut chosen = modular_candidates(ncols, rows);
        loop {
            let ints: Vec<Vec<BigInt>> = chosen.iter().map(|&i| integer_row(ncols, &rows[i])).collect();
            let (pivots, rref, d) = bareiss_rref(ints, ncols);
            let sub = Subspace::from_rref(ncols, pivots, rref, d);
            let missing = rows.iter().position(|v| !sub.contains(v));
            match missing {
                None => {
                    // the exact rank equals the number of chosen rows
                    debug_assert_eq!(sub.dim(), chosen.len());
                    return Ok((sub, chosen));
                }
                Some(i) => {
                    chosen.push(i);
                    chosen.sort_unstable();
                }
            }
        }
    }

    fn from_rref(ncols: usize, pivots: Vec<usize>, rows: Vec<Vec<BigInt>>, d: BigInt) -> Subspace {
        let mut pivot_row = vec![None; ncols];
        for (k, &c) in pivots.iter().enumerate() {
            pivot_row[c] = Some(k);
        }
        let mut quotient_index = vec![None; ncols];
        let mut next = 0;
        for j in 0..ncols {
            if pivot_row[j].is_none() {
                quotient_index[j] = Some(next);
                next += 1;
            }
        }
        Subspace { ncols, pivots, rows, d, quotient_index, pivot_row }
    }

    pub fn zero(ncols: usize) -> Subspace {
        Subspace::from_rref(ncols, vec![], vec![], BigInt::one())
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.ncols - self.pivots.len()
    }

    /// Coordinates of the image of `v` in `ℚ^n / self`, indexed by non-pivot columns.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let mut acc: std::collections::BTreeMap<usize, Q> = Default::default();
        for (j, c) in v {
            match self.pivot_row[*j] {
                None => {
                    *acc.entry(self.quotient_index[*j].expect("free column")).or_insert_with(Q::zero) += c;
                }
                Some(k) => {
                    let scale = c / Q::from_integer(self.d.clone());
                    for (col, x) in self.rows[k].iter().enumerate() {
                        if x.is_zero() || self.pivot_row[col].is_some() {
                            continue;
                        }
                        let idx = self.quotient_index[col].expect("free column");
                        *acc.entry(idx).or_insert_with(Q::zero) -= &scale * Q::from_integer(x.clone());
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.project(v).is_empty()
    }

    /// Largest absolute entry of the stored integer matrix, in bits.
    pub fn max_entry_bits(&self) -> u64 {
        self.rows.iter().flatten().map(|x| x.abs().bits()).max().unwrap_or(0)
    }
}

/// Rows independent modulo `P`, chosen greedily in input order.
fn modular_candidates(ncols: usize, rows: &[SparseVec]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<u64>)> = vec![];
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut chosen = vec![];
    for (idx, v) in rows.iter().enumerate() {
        if basis.len() == ncols {
            break;
        }
        let mut row = vec![0u64; ncols];
        let mut ok = true;
        for (j, c) in v {
            match q_mod(c) {
                Some(x) => row[*j] = (row[*j] + x) % P,
                None => ok = false,
            }
        }
        if !ok {
            chosen.push(idx);
            continue;
        }
        for col in 0..ncols {
            if row[col] == 0 {
                continue;
            }
            if let Some(b) = pivot_of_col[col] {
                let f = row[col];
                let brow = &basis[b].1;
                for j in col..ncols {
                    if brow[j] != 0 {
                        row[j] = (row[j] + P - mulmod(f, brow[j])) % P;
                    }
                }
            } else {
                let inv = powmod(row[col], P - 2);
                for x in row.iter_mut() {
                    *x = mulmod(*x, inv);
                }
                pivot_of_col[col] = Some(basis.len());
                basis.push((col, row));
                chosen.push(idx);
                break;
            }
        }
    }
    chosen
}
