//! Dense simplex for small packing LPs: maximize `c·w` subject to
//! `a_i·w <= 1` and `w >= 0`. Only used to pick weights for counting
//! bounds, which are then re-evaluated in exact integer arithmetic.

const EPS: f64 = 1e-9;
const MAX_PIVOTS: usize = 5_000;

/// Optimal (or best found within the pivot limit) weights; `None` if the
/// LP is unbounded.
pub fn max_packing(c: &[f64], a: &[Vec<f64>]) -> Option<Vec<f64>> {
    let n = c.len();
    let m = a.len();
    let mut t: Vec<Vec<f64>> = a.to_vec();
    let mut b = vec![1.0; m];
    let mut obj = c.to_vec();
    let mut nonbasic: Vec<usize> = (0..n).collect();
    let mut basic: Vec<usize> = (n..n + m).collect();
    for _ in 0..MAX_PIVOTS {
        // Bland's rule on variable labels
        let Some(s) = (0..n).filter(|&j| obj[j] > EPS).min_by_key(|&j| nonbasic[j]) else { break };
        let mut r: Option<usize> = None;
        for i in 0..m {
            if t[i][s] <= EPS {
                continue;
            }
            r = match r {
                None => Some(i),
                Some(k) => {
                    let (ri, rk) = (b[i] / t[i][s], b[k] / t[k][s]);
                    if ri < rk - EPS || ((ri - rk).abs() <= EPS && basic[i] < basic[k]) {
                        Some(i)
                    } else {
                        Some(k)
                    }
                }
            };
        }
        let r = r?;
        let p = t[r][s];
        for (j, x) in t[r].iter_mut().enumerate() {
            if j != s {
                *x /= p;
            }
        }
        b[r] /= p;
        t[r][s] = 1.0 / p;
        let pivot = t[r].clone();
        for i in 0..m {
            if i == r {
                continue;
            }
            let f = t[i][s];
            if f == 0.0 {
                continue;
            }
            for (j, x) in t[i].iter_mut().enumerate() {
                if j != s {
                    *x -= f * pivot[j];
                }
            }
            b[i] -= f * b[r];
            t[i][s] = -f / p;
        }
        let f = obj[s];
        for j in 0..n {
            if j != s {
                obj[j] -= f * t[r][j];
            }
        }
        obj[s] = -f / p;
        std::mem::swap(&mut nonbasic[s], &mut basic[r]);
    }
    let mut w = vec![0.0; n];
    for i in 0..m {
        if basic[i] < n {
            w[basic[i]] = b[i].max(0.0);
        }
    }
    Some(w)
}
