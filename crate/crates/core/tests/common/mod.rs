#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

use bmtop_core::algebra::{ChainComplex, ChainMap, IntMatrix};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A random unimodular matrix and its inverse, as a product of elementary
/// operations.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(n);
    let mut p_inv = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            p = p.neg();
            p_inv = p_inv.neg();
        }
        return (p, p_inv);
    }
    for _ in 0..rng.gen_range(1..=2 * n) {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n);
        while b == a {
            b = rng.gen_range(0..n);
        }
        let c: i64 = rng.gen_range(-2..=2);
        let mut e = IntMatrix::identity(n);
        let mut e_inv = IntMatrix::identity(n);
        e[(b, a)] = BigInt::from(c);
        e_inv[(b, a)] = BigInt::from(-c);
        p = e.mul(&p);
        p_inv = p_inv.mul(&e_inv);
    }
    (p, p_inv)
}

/// A cochain-graded complex: a direct sum of free summands and `Z -t-> Z`
/// pieces, conjugated degreewise by random unimodular matrices.
pub fn random_complex(rng: &mut ChaCha8Rng, max_len: usize, max_rank: usize) -> ChainComplex {
    let len = rng.gen_range(1..=max_len);
    let lo: i64 = rng.gen_range(-3..=1);
    let mut ranks = vec![0usize; len];
    // arrows[i]: (source basis index, target basis index, factor) from degree i
    let mut arrows: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); len];
    for _ in 0..rng.gen_range(1..=3 * len) {
        let i = rng.gen_range(0..len);
        if i + 1 < len && rng.gen_bool(0.5) {
            if ranks[i] < max_rank && ranks[i + 1] < max_rank {
                let t = rng.gen_range(1..=4);
                arrows[i].push((ranks[i], ranks[i + 1], t));
                ranks[i] += 1;
                ranks[i + 1] += 1;
            }
        } else if ranks[i] < max_rank {
            ranks[i] += 1;
        }
    }
    let mut diffs: Vec<IntMatrix> = (0..len)
        .map(|i| {
            let next = ranks.get(i + 1).copied().unwrap_or(0);
            let mut d = IntMatrix::zeros(next, ranks[i]);
            for &(s, t, f) in &arrows[i] {
                d[(t, s)] = BigInt::from(f);
            }
            d
        })
        .collect();
    let changes: Vec<(IntMatrix, IntMatrix)> =
        ranks.iter().map(|&r| random_unimodular(rng, r)).collect();
    for i in 0..len {
        if i + 1 < len {
            diffs[i] = changes[i + 1].0.mul(&diffs[i]).mul(&changes[i].1);
        }
    }
    ChainComplex::cochain(lo, ranks, diffs).expect("valid random complex")
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| {
        BigInt::from(rng.gen_range(-bound..=bound))
    })
}

/// A random degree-0 chain map with ranks at most `max_rank`: either a
/// multiple of a change of basis plus a null-homotopic term, or a purely
/// null-homotopic map between unrelated complexes.
pub fn random_chain_map(rng: &mut ChaCha8Rng, max_rank: usize) -> ChainMap {
    let k = random_complex(rng, 3, max_rank);
    let related = rng.gen_bool(0.6);
    let (l, mut base): (ChainComplex, BTreeMap<i64, IntMatrix>) = if related {
        let (lo, hi) = k.cohomological_range().unwrap_or((0, 0));
        let changes: BTreeMap<i64, (IntMatrix, IntMatrix)> = (lo..=hi)
            .map(|n| (n, random_unimodular(rng, k.rank_c(n))))
            .collect();
        let ranks = (lo..=hi).map(|n| k.rank_c(n)).collect();
        let diffs = (lo..=hi)
            .map(|n| match changes.get(&(n + 1)) {
                Some((p, _)) => p.mul(&k.d_c(n)).mul(&changes[&n].1),
                None => IntMatrix::zeros(0, k.rank_c(n)),
            })
            .collect();
        let l = ChainComplex::cochain(lo, ranks, diffs).expect("conjugate complex");
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        let base = changes
            .iter()
            .map(|(&n, (p, _))| (n, p.scale(&c)))
            .collect();
        (l, base)
    } else {
        (random_complex(rng, 3, max_rank), BTreeMap::new())
    };
    let degrees: BTreeSet<i64> = [k.cohomological_range(), l.cohomological_range()]
        .into_iter()
        .flatten()
        .flat_map(|(a, b)| a - 1..=b + 1)
        .collect();
    let h: BTreeMap<i64, IntMatrix> = degrees
        .iter()
        .map(|&n| (n, random_matrix(rng, l.rank_c(n - 1), k.rank_c(n), 2)))
        .collect();
    let zero = |n: i64| IntMatrix::zeros(l.rank_c(n - 1), k.rank_c(n));
    for &n in &degrees {
        let hn = h.get(&n).cloned().unwrap_or_else(|| zero(n));
        let hn1 = h.get(&(n + 1)).cloned().unwrap_or_else(|| zero(n + 1));
        let homotopy = l.d_c(n - 1).mul(&hn).add(&hn1.mul(&k.d_c(n)));
        let entry = base
            .remove(&n)
            .unwrap_or_else(|| IntMatrix::zeros(l.rank_c(n), k.rank_c(n)));
        base.insert(n, entry.add(&homotopy));
    }
    ChainMap::new(k, l, 0, 1, base).expect("homotopy construction is a chain map")
}

/// Invariant factors and ranks in plain `i128` arithmetic, written apart
/// from the library's reduction.
pub mod oracle {
    use std::collections::{BTreeMap, BTreeSet};

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    /// Nonzero invariant factors, sorted so that each divides the next, by
    /// elimination on a smallest-magnitude pivot.
    pub fn invariant_factors(mut a: Vec<Vec<i128>>) -> Vec<i128> {
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        let mut diag = Vec::new();
        for t in 0..rows.min(cols) {
            loop {
                let Some((pi, pj)) = (t..rows)
                    .flat_map(|i| (t..cols).map(move |j| (i, j)))
                    .filter(|&(i, j)| a[i][j] != 0)
                    .min_by_key(|&(i, j)| a[i][j].abs())
                else {
                    return normalize(diag);
                };
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                let p = a[t][t];
                let mut clean = true;
                for i in t + 1..rows {
                    let q = a[i][t] / p;
                    for j in t..cols {
                        let v = a[t][j];
                        a[i][j] -= q * v;
                    }
                    clean &= a[i][t] == 0;
                }
                for j in t + 1..cols {
                    let q = a[t][j] / p;
                    for row in a.iter_mut().skip(t) {
                        let v = row[t];
                        row[j] -= q * v;
                    }
                    clean &= a[t][j] == 0;
                }
                if clean {
                    break;
                }
            }
            diag.push(a[t][t].abs());
        }
        normalize(diag)
    }

    fn normalize(mut diag: Vec<i128>) -> Vec<i128> {
        let n = diag.len();
        for i in 0..n {
            for j in i + 1..n {
                let (x, y) = (diag[i], diag[j]);
                let g = gcd(x, y);
                diag[i] = g;
                diag[j] = x / g * y;
            }
        }
        diag
    }

    /// Fraction-free determinant.
    fn bareiss(mut m: Vec<Vec<i128>>) -> i128 {
        let n = m.len();
        let mut sign = 1;
        let mut prev = 1;
        for k in 0..n {
            if m[k][k] == 0 {
                let Some(r) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                    return 0;
                };
                m.swap(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        sign * m[n - 1][n - 1]
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
            .collect()
    }

    /// Invariant factors as ratios of determinantal divisors, the gcds of
    /// all `k x k` minors. Exponential; small matrices only.
    pub fn invariant_factors_by_minors(a: &[Vec<i128>]) -> Vec<i128> {
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        let mut out = Vec::new();
        let mut previous = 1;
        for k in 1..=rows.min(cols) {
            let mut divisor = 0;
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let minor = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| a[i][j]).collect())
                        .collect();
                    divisor = gcd(divisor, bareiss(minor));
                }
            }
            if divisor == 0 {
                break;
            }
            out.push(divisor / previous);
            previous = divisor;
        }
        out
    }

    const PRIME: i128 = 1_000_000_007;

    fn pow_mod(mut b: i128, mut e: i128) -> i128 {
        let mut r = 1;
        b = b.rem_euclid(PRIME);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % PRIME;
            }
            b = b * b % PRIME;
            e >>= 1;
        }
        r
    }

    /// Rank over `F_p` for a large prime.
    pub fn rank_mod_p(a: &[Vec<i128>]) -> usize {
        let mut m: Vec<Vec<i128>> = a
            .iter()
            .map(|r| r.iter().map(|x| x.rem_euclid(PRIME)).collect())
            .collect();
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut rank = 0;
        for j in 0..cols {
            let Some(p) = (rank..rows).find(|&i| m[i][j] != 0) else {
                continue;
            };
            m.swap(rank, p);
            let inv = pow_mod(m[rank][j], PRIME - 2);
            for i in 0..rows {
                if i != rank && m[i][j] != 0 {
                    let f = m[i][j] * inv % PRIME;
                    for k in j..cols {
                        let v = m[rank][k];
                        m[i][k] = (m[i][k] - f * v).rem_euclid(PRIME);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Boundary matrices of the face closure of `maximal`, built directly.
    pub fn boundaries(maximal: &[Vec<i64>]) -> Vec<Vec<Vec<i128>>> {
        let mut by_dim: Vec<BTreeSet<Vec<i64>>> = Vec::new();
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            for mask in 1u32..(1 << s.len()) {
                let f: Vec<i64> = (0..s.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| s[i])
                    .collect();
                let d = f.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, BTreeSet::new);
                }
                by_dim[d].insert(f);
            }
        }
        let index: Vec<BTreeMap<&Vec<i64>, usize>> = by_dim
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        // boundaries[m] = ∂_m, with ∂_0 and ∂_{top+1} as empty shapes
        let mut out = Vec::new();
        for m in 0..=by_dim.len() {
            let rows = if m == 0 { 0 } else { by_dim[m - 1].len() };
            let cols = by_dim.get(m).map_or(0, BTreeSet::len);
            let mut d = vec![vec![0i128; cols]; rows];
            if m > 0 && m < by_dim.len() {
                for (j, s) in by_dim[m].iter().enumerate() {
                    for i in 0..s.len() {
                        let mut f = s.clone();
                        f.remove(i);
                        d[index[m - 1][&f]][j] = if i % 2 == 0 { 1 } else { -1 };
                    }
                }
            }
            if rows == 0 {
                d = Vec::new();
            }
            out.push(d);
            let _ = cols;
        }
        out
    }

    /// `(betti, torsion)` per dimension from the oracle boundaries.
    pub fn homology(maximal: &[Vec<i64>]) -> Vec<(usize, Vec<i128>)> {
        let b = boundaries(maximal);
        let top = b.len() - 1;
        let counts: Vec<usize> = (0..top)
            .map(|m| {
                if m + 1 < b.len() && !b[m + 1].is_empty() {
                    b[m + 1].len()
                } else {
                    // column count of ∂_m
                    b[m].first().map_or_else(|| count_cols(&b, m), Vec::len)
                }
            })
            .collect();
        let ranks: Vec<usize> = b.iter().map(|d| rank_of(d)).collect();
        (0..top)
            .map(|m| {
                let outgoing = ranks[m];
                let incoming = ranks.get(m + 1).copied().unwrap_or(0);
                let torsion = b
                    .get(m + 1)
                    .map(|d| {
                        invariant_factors(d.clone())
                            .into_iter()
                            .filter(|&t| t > 1)
                            .collect()
                    })
                    .unwrap_or_default();
                (counts[m] - outgoing - incoming, torsion)
            })
            .collect()
    }

    fn count_cols(b: &[Vec<Vec<i128>>], m: usize) -> usize {
        b.get(m + 1).map_or(0, Vec::len)
    }

    fn rank_of(d: &[Vec<i128>]) -> usize {
        let by_snf = invariant_factors(d.to_vec()).len();
        assert_eq!(by_snf, rank_mod_p(d), "integer and mod-p ranks disagree");
        by_snf
    }
}
