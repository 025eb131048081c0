//! Independent straight-line oracles and fixture builders for the
//! integration tests. Nothing here calls into the code paths it checks.
#![allow(dead_code)]

use std::collections::HashMap;

use rand::Rng;

use geomlex_core::rng::seeded_for_label;
use geomlex_core::synth::Gaussian;
use geomlex_core::{EmbeddingSet, PhonemeSequence};

pub fn gaussian_rows(seed: u64, n: usize, d: usize) -> Vec<Vec<f64>> {
    let mut g = Gaussian::new(seed);
    (0..n)
        .map(|_| (0..d).map(|_| g.sample()).collect())
        .collect()
}

pub fn unlabeled(rows: Vec<Vec<f64>>) -> EmbeddingSet<f64> {
    let labels = (0..rows.len()).map(|i| format!("s{i}")).collect();
    EmbeddingSet::new(labels, rows).unwrap()
}

pub fn rows_of(set: &EmbeddingSet<f64>) -> Vec<Vec<f64>> {
    set.rows().map(<[f64]>::to_vec).collect()
}

/// Random orthogonal `d × d` matrix: Gram–Schmidt on a Gaussian matrix.
pub fn random_orthogonal(seed: u64, d: usize) -> Vec<Vec<f64>> {
    let raw = gaussian_rows(seed, d, d);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(d);
    for mut v in raw {
        for _ in 0..2 {
            for b in &basis {
                let p: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= p * y;
                }
            }
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        basis.push(v.into_iter().map(|x| x / n).collect());
    }
    basis
}

pub fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let inner = b.len();
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    (0..a[0].len())
        .map(|j| a.iter().map(|r| r[j]).collect())
        .collect()
}

pub fn cosine(u: &[f64], v: &[f64]) -> f64 {
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nv = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    dot / (nu * nv)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
#[allow(clippy::needless_range_loop)]
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Isotropy score written out step by step: unbiased covariance, its
/// eigenvalues as the reoriented variance profile, then the defect formula.
pub fn isoscore_oracle(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    let d = rows[0].len();
    let mean: Vec<f64> = (0..d)
        .map(|j| rows.iter().map(|r| r[j]).sum::<f64>() / n as f64)
        .collect();
    let mut cov = vec![vec![0.0; d]; d];
    for r in rows {
        for a in 0..d {
            for b in 0..d {
                cov[a][b] += (r[a] - mean[a]) * (r[b] - mean[b]);
            }
        }
    }
    for row in &mut cov {
        for v in row.iter_mut() {
            *v /= (n - 1) as f64;
        }
    }
    let sigma = jacobi_eigenvalues(cov);
    let df = d as f64;
    let norm = sigma.iter().map(|s| s * s).sum::<f64>().sqrt();
    let normalized: Vec<f64> = sigma.iter().map(|s| df.sqrt() * s / norm).collect();
    let defect = normalized
        .iter()
        .map(|s| (s - 1.0).powi(2))
        .sum::<f64>()
        .sqrt()
        / (2.0 * (df - df.sqrt())).sqrt();
    let phi = (df - defect * defect * (df - df.sqrt())).powi(2) / (df * df);
    (df * phi - 1.0) / (df - 1.0)
}

/// Linear CKA via explicit centering matrix products.
pub fn cka_oracle(x: &[Vec<f64>], y: &[Vec<f64>]) -> f64 {
    let k = x.len();
    let h: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { 1.0 } else { 0.0 } - 1.0 / k as f64)
                .collect()
        })
        .collect();
    let gram = |m: &[Vec<f64>]| {
        let d = m[0].len() as f64;
        let g = mat_mul(&mat_mul(&h, &mat_mul(m, &transpose(m))), &transpose(&h));
        g.into_iter()
            .map(|r| r.into_iter().map(|v| v / d).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    };
    let gx = gram(x);
    let gy = gram(y);
    let mut inner = 0.0;
    let mut nx = 0.0;
    let mut ny = 0.0;
    for i in 0..k {
        for j in 0..k {
            inner += gx[i][j] * gy[i][j];
            nx += gx[i][j] * gx[i][j];
            ny += gy[i][j] * gy[i][j];
        }
    }
    inner / (nx.sqrt() * ny.sqrt())
}

/// Query-based mAP by counting, without sorting: the rank of row `j` for
/// query `q` is one plus the number of rows that beat it (higher similarity,
/// or equal similarity and lower index).
pub fn map_oracle(rows: &[Vec<f64>], labels: &[String]) -> Option<f64> {
    let n = rows.len();
    let mut aps = Vec::new();
    for q in 0..n {
        let relevant: Vec<usize> = (0..n)
            .filter(|&j| j != q && labels[j] == labels[q])
            .collect();
        if relevant.is_empty() {
            continue;
        }
        let sim = |j: usize| cosine(&rows[q], &rows[j]);
        let rank = |j: usize| {
            1 + (0..n)
                .filter(|&o| o != q && o != j)
                .filter(|&o| sim(o) > sim(j) || (sim(o) == sim(j) && o < j))
                .count()
        };
        let mut ap = 0.0;
        for &j in &relevant {
            let r = rank(j);
            let hits_at_r = relevant.iter().filter(|&&o| rank(o) <= r).count();
            ap += hits_at_r as f64 / r as f64;
        }
        aps.push(ap / relevant.len() as f64);
    }
    (!aps.is_empty()).then(|| aps.iter().sum::<f64>() / aps.len() as f64)
}

/// Trigram count table over left-padded words; `None` is the boundary.
pub struct CountTable {
    pub trigrams: HashMap<(Option<String>, Option<String>, String), u64>,
    pub totals: HashMap<(Option<String>, Option<String>), u64>,
}

impl CountTable {
    pub fn new(words: &[PhonemeSequence]) -> Self {
        let mut trigrams = HashMap::new();
        let mut totals = HashMap::new();
        for w in words {
            let mut hist: (Option<String>, Option<String>) = (None, None);
            for s in w.symbols() {
                *trigrams
                    .entry((hist.0.clone(), hist.1.clone(), s.clone()))
                    .or_insert(0) += 1;
                *totals.entry(hist.clone()).or_insert(0) += 1;
                hist = (hist.1.take(), Some(s.clone()));
            }
        }
        Self { trigrams, totals }
    }

    pub fn prob(&self, a: Option<&str>, b: Option<&str>, x: &str, k: f64, v: usize) -> f64 {
        let a = a.map(str::to_owned);
        let b = b.map(str::to_owned);
        let c = self
            .trigrams
            .get(&(a.clone(), b.clone(), x.to_owned()))
            .copied()
            .unwrap_or(0);
        let t = self.totals.get(&(a, b)).copied().unwrap_or(0);
        (c as f64 + k) / (t as f64 + k * v as f64)
    }

    /// PIC as minus the log of the chained product of transition probabilities.
    pub fn pic(&self, word: &PhonemeSequence, k: f64, v: usize) -> f64 {
        let syms = word.symbols();
        let mut product = 1.0;
        for i in 0..syms.len() {
            let a = (i >= 2).then(|| syms[i - 2].as_str());
            let b = (i >= 1).then(|| syms[i - 1].as_str());
            product *= self.prob(a, b, &syms[i], k, v);
        }
        -product.ln()
    }
}

/// Enumerates every ordered within pair and replays the same seeded
/// contrast draws.
pub fn cdi_oracle(set: &EmbeddingSet<f64>, label: &str, seed: u64) -> f64 {
    let rows = rows_of(set);
    let members: Vec<usize> = (0..rows.len()).filter(|&r| set.label(r) == label).collect();
    let outside: Vec<usize> = (0..rows.len()).filter(|&r| set.label(r) != label).collect();
    let dist = |a: usize, b: usize| 1.0 - cosine(&rows[a], &rows[b]);
    let mut rng = seeded_for_label(seed, label);
    let mut total = 0.0;
    let mut pairs = 0;
    for &i in &members {
        for &j in &members {
            if i != j {
                let c = outside[rng.random_range(0..outside.len())];
                total += dist(i, c) - dist(i, j);
                pairs += 1;
            }
        }
    }
    total / pairs as f64
}

/// Γ at a positive half-integer, from Γ(1) = 1, Γ(1/2) = √π and Γ(x + 1) = xΓ(x).
fn gamma_half_integer(x: f64) -> f64 {
    let (mut g, mut at) = if x.fract() == 0.0 {
        (1.0, 1.0)
    } else {
        (std::f64::consts::PI.sqrt(), 0.5)
    };
    while at < x {
        g *= at;
        at += 1.0;
    }
    g
}

#[allow(clippy::too_many_arguments)]
fn simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * eps {
        return left + right + (left + right - whole) / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
        + simpson(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
}

/// Two-tailed Student-t p-value by integrating the density over
/// `t = tan θ`, θ ∈ [atan |t|, π/2).
pub fn p_quadrature(t: f64, nu: f64) -> f64 {
    let c = gamma_half_integer((nu + 1.0) / 2.0)
        / ((nu * std::f64::consts::PI).sqrt() * gamma_half_integer(nu / 2.0));
    let f = move |theta: f64| {
        let (s, co) = theta.sin_cos();
        if co <= 0.0 {
            return 0.0;
        }
        let x = s / co;
        c * (1.0 + x * x / nu).powf(-(nu + 1.0) / 2.0) / (co * co)
    };
    let (a, b) = (t.abs().atan(), std::f64::consts::FRAC_PI_2);
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    2.0 * simpson(&f, a, b, fa, fm, fb, whole, 1e-13, 50)
}

pub fn r_oracle(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    sxy / (sxx * syy).sqrt()
}
