//! Integer lattice computations on homogeneous correspondents: Smith normal
//! form, unimodularity, and lattice points of half-open parallelepipeds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{frac, qi, Q};

use super::linalg;

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Smith normal form `P · M · Q = D` of an integer matrix. Only the
/// invariant factors and `Q⁻¹` are kept; the first `rank` rows of `Q⁻¹` are a
/// basis of the saturation of the row lattice of `M`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub invariant_factors: Vec<BigInt>,
    pub q_inv: IntMatrix,
}

pub fn smith(m: &IntMatrix) -> Smith {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut q_inv: IntMatrix = (0..cols)
        .map(|i| (0..cols).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();

    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero magnitude in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        swap_cols(&mut a, &mut q_inv, t, pj);

        loop {
            let mut clean = true;
            // clear column t below pivot
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let f = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let d = &f * &a[t][j];
                        a[i][j] -= d;
                    }
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            // clear row t right of pivot
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let f = a[t][j].div_floor(&a[t][t]);
                    add_col(&mut a, &mut q_inv, j, t, &(-f));
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                // divisibility of the rest of the block by the pivot
                let mut fix = None;
                'outer: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if !(&a[i][j] % &a[t][t]).is_zero() {
                            fix = Some(i);
                            break 'outer;
                        }
                    }
                }
                match fix {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t into the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            } else if best.1 != t {
                swap_cols(&mut a, &mut q_inv, t, best.1);
            }
        }
        t += 1;
    }
    let invariant_factors = (0..rows.min(cols))
        .map(|i| a[i][i].abs())
        .take_while(|d| !d.is_zero())
        .collect();
    Smith {
        invariant_factors,
        q_inv,
    }
}

// Column ops on `a` are mirrored as inverse row ops on `q_inv`.
fn swap_cols(a: &mut IntMatrix, q_inv: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    q_inv.swap(i, j);
}

// col_dst += f * col_src ; then Q⁻¹ row_src -= f * row_dst
fn add_col(a: &mut IntMatrix, q_inv: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    for row in a.iter_mut() {
        let d = f * &row[src];
        row[dst] += d;
    }
    let dst_row = q_inv[dst].clone();
    for (x, y) in q_inv[src].iter_mut().zip(dst_row.iter()) {
        *x -= f * y;
    }
}

/// Index of the row lattice in its saturation (product of the invariant
/// factors), or `None` when rows are dependent.
pub fn lattice_index(rows: &IntMatrix) -> Option<BigInt> {
    let s = smith(rows);
    if s.invariant_factors.len() < rows.len() {
        return None;
    }
    Some(s.invariant_factors.iter().fold(BigInt::one(), |acc, d| acc * d))
}

/// True iff the rows extend to a basis of `Z^cols`.
pub fn is_unimodular_system(rows: &IntMatrix) -> bool {
    let s = smith(rows);
    s.invariant_factors.len() == rows.len() && s.invariant_factors.iter().all(|d| d.is_one())
}

/// A nonzero lattice point `ξ = Σ λ_i r_i` with every `λ_i ∈ [0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParallelepipedPoint {
    pub xi: Vec<BigInt>,
    pub lambda: Vec<Q>,
}

/// All nonzero lattice points of the half-open parallelepiped spanned by
/// linearly independent integer rows. One point per nonzero coset of the row
/// lattice inside its saturation.
pub fn parallelepiped_points(rows: &IntMatrix) -> Vec<ParallelepipedPoint> {
    let s = smith(rows);
    let r = s.invariant_factors.len();
    assert_eq!(r, rows.len(), "rows must be linearly independent");
    let qm: Vec<Vec<Q>> = rows
        .iter()
        .map(|row| row.iter().map(qi).collect())
        .collect();
    let cols = rows[0].len();
    // barycentric coordinates of the saturation basis
    let basis: Vec<Vec<Q>> = (0..r)
        .map(|i| {
            let row: Vec<Q> = s.q_inv[i].iter().map(qi).collect();
            linalg::solve_left(&qm, &row).expect("saturation lies in the row space")
        })
        .collect();
    let mut out = Vec::new();
    let mut digits = vec![BigInt::zero(); r];
    loop {
        // advance mixed-radix counter
        let mut k = 0;
        loop {
            if k == r {
                return out;
            }
            digits[k] += 1;
            if digits[k] < s.invariant_factors[k] {
                break;
            }
            digits[k] = BigInt::zero();
            k += 1;
        }
        let lambda: Vec<Q> = (0..r)
            .map(|j| frac(&(0..r).map(|i| qi(&digits[i]) * &basis[i][j]).sum::<Q>()))
            .collect();
        let xi: Vec<BigInt> = (0..cols)
            .map(|c| {
                let v: Q = (0..r).map(|i| &lambda[i] * &qm[i][c]).sum();
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect();
        if xi.iter().all(|x| x.is_zero()) {
            continue;
        }
        out.push(ParallelepipedPoint { xi, lambda });
    }
}

pub fn to_int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}
