//! Independent reference implementations used as test oracles. Nothing here
//! calls into the library's linear algebra, enumeration or optimisation code.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

/// Partition numbers p(0..=n_max) by the coin-change recurrence.
pub fn partition_numbers(n_max: usize) -> Vec<u64> {
    let mut p = vec![0u64; n_max + 1];
    p[0] = 1;
    for part in 1..=n_max {
        for n in part..=n_max {
            p[n] += p[n - part];
        }
    }
    p
}

/// Plane partition numbers from the product `prod_k (1 - x^k)^(-k)`.
pub fn plane_partition_numbers(n_max: usize) -> Vec<u64> {
    let mut p = vec![0u64; n_max + 1];
    p[0] = 1;
    for k in 1..=n_max {
        for _ in 0..k {
            for n in k..=n_max {
                p[n] += p[n - k];
            }
        }
    }
    p
}

/// Row reduction mod `p`; returns the nonzero rows in reduced echelon form.
pub fn rref(p: u32, mut rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let p64 = p as u64;
    let inv = |a: u32| -> u32 {
        let mut r = 1u64;
        let (mut b, mut e) = (a as u64, p64 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p64;
            }
            b = b * b % p64;
            e >>= 1;
        }
        r as u32
    };
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let s = inv(rows[rank][col]);
        for v in rows[rank].iter_mut() {
            *v = (*v as u64 * s as u64 % p64) as u32;
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let f = row[col] as u64;
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    let sub = f * y as u64 % p64;
                    *x = ((*x as u64 + p64 - sub) % p64) as u32;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// Monomials in `d` variables of total degree `< c`, in a fixed order of our
/// own choosing (lexicographic on exponent tuples).
pub fn monomials_below(d: usize, c: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..c).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().sum::<u32>() < c);
    out.sort();
    out
}

/// A canonical, basis-independent form of a subspace of `F_p[x]/m^c`:
/// the reduced echelon rows over [`monomials_below`], as monomial/coefficient
/// pairs.
pub type RawIdeal = Vec<BTreeMap<Vec<u32>, u32>>;

fn to_raw(monos: &[Vec<u32>], rows: Vec<Vec<u32>>) -> RawIdeal {
    rows.into_iter()
        .map(|r| {
            r.into_iter()
                .enumerate()
                .filter(|&(_, c)| c != 0)
                .map(|(i, c)| (monos[i].clone(), c))
                .collect()
        })
        .collect()
}

/// Canonicalises a subspace given as rows of monomial/coefficient maps.
pub fn canonical(p: u32, d: usize, c: u32, rows: &[BTreeMap<Vec<u32>, u32>]) -> RawIdeal {
    let monos = monomials_below(d, c);
    let idx: BTreeMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let dense = rows
        .iter()
        .map(|r| {
            let mut v = vec![0u32; monos.len()];
            for (m, &x) in r {
                v[idx[m]] = x % p;
            }
            v
        })
        .collect();
    to_raw(&monos, rref(p, dense))
}

/// Every ideal of colength `n` in `F_p[x_1..x_d]/m^c`, found by running
/// through all reduced echelon matrices of the right rank and keeping the
/// ones closed under multiplication by each variable.
pub fn raw_ideals(p: u32, d: usize, c: u32, n: usize) -> HashSet<RawIdeal> {
    let monos = monomials_below(d, c);
    let dim = monos.len();
    let k = dim - n;
    let idx: BTreeMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let shift: Vec<Vec<Option<usize>>> = (0..d)
        .map(|v| {
            monos
                .iter()
                .map(|m| {
                    let mut s = m.clone();
                    s[v] += 1;
                    idx.get(&s).copied()
                })
                .collect()
        })
        .collect();

    let mut found = HashSet::new();
    for pivots in combinations(dim, k) {
        // Free slots: entries right of each pivot in non-pivot columns.
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                (pc + 1..dim)
                    .filter(|col| !pivots.contains(col))
                    .map(move |col| (r, col))
            })
            .collect();
        let total = (p as u64).pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0u32; dim]; k];
            for (r, &pc) in pivots.iter().enumerate() {
                rows[r][pc] = 1;
            }
            let mut c = code;
            for &(r, col) in &free {
                rows[r][col] = (c % p as u64) as u32;
                c /= p as u64;
            }
            let closed = (0..d).all(|v| {
                rows.iter().all(|row| {
                    let mut img = vec![0u32; dim];
                    for (i, &x) in row.iter().enumerate() {
                        if let Some(j) = shift[v][i] {
                            img[j] = x;
                        }
                    }
                    let mut test = rows.clone();
                    test.push(img);
                    rref(p, test).len() == k
                })
            });
            if closed {
                found.insert(to_raw(&monos, rows));
            }
        }
    }
    found
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every admissible sequence with sum `total`: `r_n = n + 1` for `n < n_0`,
/// then a non-increasing tail starting at most `n_0`.
pub fn admissible_sequences(total: u64) -> Vec<Vec<u64>> {
    fn tails(rem: u64, cap: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for v in (1..=cap.min(rem)).rev() {
            cur.push(v);
            tails(rem - v, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut n0 = 0u64;
    while n0 * (n0 + 1) / 2 <= total {
        let mut head: Vec<u64> = (1..=n0).collect();
        tails(total - n0 * (n0 + 1) / 2, n0, &mut head, &mut out);
        n0 += 1;
    }
    out
}

/// The objective straight from its definition,
/// `sum_{n >= n_0} (r_{n-1} - r_n) * sum_{m > n} r_m`.
pub fn sequence_objective(r: &[u64]) -> i64 {
    let at = |n: usize| r.get(n).copied().unwrap_or(0) as i64;
    let n0 = (0..=r.len()).find(|&n| at(n) <= n as i64).unwrap();
    if n0 == 0 {
        return 0;
    }
    (n0..=r.len())
        .map(|n| (at(n - 1) - at(n)) * r.iter().skip(n + 1).sum::<u64>() as i64)
        .sum()
}

pub fn sequence_max(total: u64) -> i64 {
    admissible_sequences(total)
        .iter()
        .map(|r| sequence_objective(r))
        .max()
        .unwrap_or(0)
}

/// Gaussian binomial `[n, k]_p` from the product formula.
pub fn gaussian(n: u64, k: u64, p: u64) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= p.pow((n - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Layer data of a two-variable monomial ideal given by its generators:
/// `d_n` = number of degree-`n` monomials in the ideal, `e_n` = number of
/// minimal generators of degree `n`, for `n = 0..=top`.
pub fn monomial_layers(gens: &[(u32, u32)], top: u32) -> (Vec<u64>, Vec<u64>) {
    let inside = |a: u32, b: u32| gens.iter().any(|&(x, y)| x <= a && y <= b);
    let minimal: Vec<(u32, u32)> = gens
        .iter()
        .copied()
        .filter(|&(a, b)| {
            !gens
                .iter()
                .any(|&(x, y)| (x, y) != (a, b) && x <= a && y <= b)
        })
        .collect();
    let d = (0..=top)
        .map(|n| (0..=n).filter(|&a| inside(a, n - a)).count() as u64)
        .collect();
    let e = (0..=top)
        .map(|n| minimal.iter().filter(|&&(a, b)| a + b == n).count() as u64)
        .collect();
    (d, e)
}

/// All subspaces of F_p^n as sorted element sets, found by spanning every
/// tuple of up to `n` vectors.
pub fn all_subspaces(p: u32, n: usize) -> HashSet<Vec<Vec<u32>>> {
    let vectors: Vec<Vec<u32>> = (0..(p as usize).pow(n as u32))
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let x = (c % p as usize) as u32;
                    c /= p as usize;
                    x
                })
                .collect()
        })
        .collect();
    let span = |gens: &[&Vec<u32>]| -> Vec<Vec<u32>> {
        let mut set: HashSet<Vec<u32>> = HashSet::from([vec![0; n]]);
        for g in gens {
            let prev: Vec<_> = set.iter().cloned().collect();
            for v in prev {
                for s in 1..p {
                    set.insert((0..n).map(|i| (v[i] + s * g[i]) % p).collect());
                }
            }
        }
        let mut out: Vec<_> = set.into_iter().collect();
        out.sort();
        out
    };
    let mut found = HashSet::new();
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(ix) = stack.pop() {
        let gens: Vec<&Vec<u32>> = ix.iter().map(|&i| &vectors[i]).collect();
        found.insert(span(&gens));
        if ix.len() < n {
            let start = ix.last().map_or(0, |&i| i + 1);
            for j in start..vectors.len() {
                let mut next = ix.clone();
                next.push(j);
                stack.push(next);
            }
        }
    }
    found
}
