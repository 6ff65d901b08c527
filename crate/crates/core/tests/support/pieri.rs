//! Second code path for Schubert structure constants: Jacobi–Trudi expansion
//! of `s_λ` into complete homogeneous classes `h_k`, each applied to a class
//! by the Pieri rule, all inside the cohomology ring of a Grassmannian (the
//! `rows × cols` box). No tableaux are involved.

use std::collections::BTreeMap;

pub type Class = BTreeMap<Vec<u32>, i64>;

pub struct BoxRing {
    pub rows: usize,
    pub cols: u32,
}

impl BoxRing {
    pub fn new(rows: usize, cols: u32) -> Self {
        BoxRing { rows, cols }
    }

    pub fn basis(&self, parts: &[u32]) -> Class {
        let mut p = parts.to_vec();
        p.resize(self.rows, 0);
        let mut c = Class::new();
        if p.len() == self.rows && p.iter().all(|&x| x <= self.cols) {
            c.insert(p, 1);
        }
        c
    }

    /// h_k · s_μ: add a horizontal strip of size k in every admissible way.
    fn pieri(&self, k: i64, mu: &[u32], out: &mut Class, coeff: i64) {
        if k < 0 {
            return;
        }
        fn go(
            ring: &BoxRing,
            mu: &[u32],
            row: usize,
            left: u32,
            nu: &mut Vec<u32>,
            out: &mut Class,
            coeff: i64,
        ) {
            if row == ring.rows {
                if left == 0 {
                    *out.entry(nu.clone()).or_insert(0) += coeff;
                }
                return;
            }
            let cap = if row == 0 { ring.cols } else { mu[row - 1] };
            let lo = mu[row];
            for v in lo..=cap {
                let added = v - lo;
                if added > left {
                    break;
                }
                nu.push(v);
                go(ring, mu, row + 1, left - added, nu, out, coeff);
                nu.pop();
            }
        }
        let mut nu = Vec::with_capacity(self.rows);
        go(self, mu, 0, k as u32, &mut nu, out, coeff);
    }

    fn times_h(&self, k: i64, x: &Class) -> Class {
        let mut out = Class::new();
        for (mu, &c) in x {
            if c != 0 {
                self.pieri(k, mu, &mut out, c);
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// x · s_λ via the Jacobi–Trudi determinant.
    pub fn times_schur(&self, lam: &[u32], x: &Class) -> Class {
        let lam: Vec<u32> = lam.iter().copied().filter(|&p| p > 0).collect();
        let l = lam.len();
        let mut total = Class::new();
        for (perm, sign) in permutations(l) {
            let mut cur = x.clone();
            for i in 0..l {
                let k = lam[i] as i64 - i as i64 + perm[i] as i64;
                cur = self.times_h(k, &cur);
                if cur.is_empty() {
                    break;
                }
            }
            for (p, c) in cur {
                *total.entry(p).or_insert(0) += sign * c;
            }
        }
        total.retain(|_, c| *c != 0);
        total
    }

    pub fn coefficient(&self, x: &Class, parts: &[u32]) -> i64 {
        let mut p = parts.to_vec();
        p.resize(self.rows, 0);
        x.get(&p).copied().unwrap_or(0)
    }
}

fn permutations(l: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        let l = used.len();
        if prefix.len() == l {
            let mut inv = 0;
            for a in 0..l {
                for b in a + 1..l {
                    if prefix[a] > prefix[b] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..l {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; l], &mut out);
    out
}

/// c^ν_{λμ} computed in a box large enough to hold every term.
pub fn lr_oracle(lam: &[u32], mu: &[u32], nu: &[u32]) -> i64 {
    let len = |p: &[u32]| p.iter().filter(|&&x| x > 0).count();
    let first = |p: &[u32]| p.first().copied().unwrap_or(0);
    let rows = (len(lam) + len(mu)).max(len(nu)).max(1);
    let cols = (first(lam) + first(mu)).max(first(nu)).max(1);
    let ring = BoxRing::new(rows, cols);
    let prod = ring.times_schur(mu, &ring.basis(lam));
    ring.coefficient(&prod, nu)
}

/// Triple intersection number of Schubert classes of subsets `I, J, K` of
/// `{1..n}`, classes indexed by parts `n - r + ℓ - s(ℓ)`.
pub fn triple_intersection(n: usize, i: &[usize], j: &[usize], k: &[usize]) -> i64 {
    let r = i.len();
    if r == 0 {
        return 1;
    }
    let cols = (n - r) as u32;
    let part = |s: &[usize]| -> Vec<u32> {
        s.iter()
            .enumerate()
            .map(|(l, &x)| (n - r + l + 1 - x) as u32)
            .collect()
    };
    if cols == 0 {
        return 1;
    }
    let ring = BoxRing::new(r, cols);
    let x = ring.basis(&part(i));
    let x = ring.times_schur(&part(j), &x);
    let x = ring.times_schur(&part(k), &x);
    ring.coefficient(&x, &vec![cols; r])
}
