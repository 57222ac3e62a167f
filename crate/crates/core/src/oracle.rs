//! Brute-force reference implementations, deliberately simple and slow.
#![allow(clippy::needless_range_loop)] // dense matrix code reads better indexed
//!
//! Everything here recomputes results straight from the defining formulas:
//! triple loops over all index combinations, dense matrices, elementary
//! eigeniteration. None of it shares algorithm code with the production
//! paths it checks. Inputs are capped at [`MAX_ORACLE_NODES`] nodes. The
//! routines ship in the library (not just in tests) so the command line can
//! expose a verification mode on small inputs.

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::tensor::{Fill, MotifTensor, TensorEntry, TensorKind, TransitionTensor};

pub const MAX_ORACLE_NODES: usize = 50;

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ORACLE_NODES {
        return Err(Error::TooLarge {
            n,
            max: MAX_ORACLE_NODES,
        });
    }
    Ok(())
}

/// Motif tensor by direct edge-pattern checks over every canonical triple.
pub fn brute_motifs(g: &DirectedGraph, kind: TensorKind) -> Result<MotifTensor> {
    check_size(g.n())?;
    let n = g.n() as u32;
    let und = |a: u32, b: u32| g.has_edge(a, b) || g.has_edge(b, a);
    let mut entries: Vec<TensorEntry> = Vec::new();
    if matches!(kind, TensorKind::Edge) {
        return Ok(MotifTensor::from_entries(g.n(), kind, entries));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let count = match kind {
                    TensorKind::Edge => 0,
                    TensorKind::Triangle => (und(i, j) && und(j, k) && und(i, k)) as u8,
                    TensorKind::D3c | TensorKind::Layered => {
                        (g.has_edge(i, j) && g.has_edge(j, k) && g.has_edge(k, i)) as u8
                            + (g.has_edge(i, k) && g.has_edge(k, j) && g.has_edge(j, i)) as u8
                    }
                    TensorKind::D3cNoRecip => {
                        let fwd = g.has_edge(i, j) && g.has_edge(j, k) && g.has_edge(k, i);
                        let rev = g.has_edge(i, k) && g.has_edge(k, j) && g.has_edge(j, i);
                        ((fwd
                            && !rev
                            && !g.has_edge(j, i)
                            && !g.has_edge(k, j)
                            && !g.has_edge(i, k))
                            || (rev
                                && !fwd
                                && !g.has_edge(i, j)
                                && !g.has_edge(j, k)
                                && !g.has_edge(k, i))) as u8
                    }
                };
                if count > 0 {
                    entries.push(TensorEntry { i, j, k, count });
                }
            }
        }
    }
    if matches!(kind, TensorKind::Layered) {
        for i in 0..n {
            for j in (i + 1)..n {
                if g.has_edge(i, j) && g.has_edge(j, i) {
                    entries.push(TensorEntry {
                        i,
                        j: i,
                        k: j,
                        count: 1,
                    });
                    entries.push(TensorEntry {
                        i,
                        j,
                        k: j,
                        count: 1,
                    });
                }
            }
        }
    }
    Ok(MotifTensor::from_entries(g.n(), kind, entries))
}

/// Materialize the full collapsed matrix `P[x]`, dangling columns included.
/// Returned as rows: `out[i][j] = P[x](i, j)`.
pub fn dense_collapse(tt: &TransitionTensor, x: &[f64]) -> Result<Vec<Vec<f64>>> {
    let n = tt.n();
    check_size(n)?;
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let mut out = vec![vec![0.0; n]; n];

    if let Some((out_adj, _, u)) = tt.edge_chain_parts() {
        for j in 0..n {
            if out_adj[j].is_empty() {
                for i in 0..n {
                    out[i][j] = u[i];
                }
            } else {
                let w = 1.0 / out_adj[j].len() as f64;
                for &i in &out_adj[j] {
                    out[i as usize][j] = w;
                }
            }
        }
        return Ok(out);
    }

    let base = tt.base().expect("sparse backing has a base tensor");
    let fill = tt.fill().expect("sparse backing has a fill");
    for j in 0..n as u32 {
        for k in 0..n as u32 {
            let mut col_sum = 0.0;
            for i in 0..n as u32 {
                col_sum += base.value(i, j, k) as f64;
            }
            let xk = x[k as usize];
            if col_sum > 0.0 {
                for i in 0..n as u32 {
                    let v = base.value(i, j, k) as f64;
                    if v > 0.0 {
                        out[i as usize][j as usize] += xk * v / col_sum;
                    }
                }
            } else {
                match fill {
                    Fill::Uniform(u) => {
                        for i in 0..n {
                            out[i][j as usize] += xk * u[i];
                        }
                    }
                    Fill::TwoComponent { side, size } => {
                        let sj = side[j as usize];
                        if sj < 2 {
                            let w = 1.0 / size[sj as usize] as f64;
                            for i in 0..n {
                                if side[i] == sj {
                                    out[i][j as usize] += xk * w;
                                }
                            }
                        } else {
                            out[n - 1][j as usize] += xk;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All the sweep scores of one node set, straight from the definitions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteScores {
    pub cut: u64,
    pub vol_s: u64,
    pub vol_sbar: u64,
    pub phi: f64,
    pub ncut: f64,
    pub rho: f64,
    pub cut3: u64,
    pub vol3_s: u64,
    pub vol3_sbar: u64,
    pub phi3: f64,
    pub rho3: f64,
    pub density_smaller: f64,
}

pub fn brute_scores(g: &DirectedGraph, t: &MotifTensor, in_s: &[bool]) -> Result<BruteScores> {
    let n = g.n();
    check_size(n)?;
    if in_s.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: in_s.len(),
        });
    }
    let size_s = in_s.iter().filter(|&&b| b).count();
    if size_s == 0 || size_s == n {
        return Err(Error::InvalidConfig(
            "set must be a proper nonempty subset".into(),
        ));
    }

    let mut cut = 0u64;
    let mut vol_s = 0u64;
    let mut vol_sbar = 0u64;
    let mut internal_s = 0u64;
    let mut internal_sbar = 0u64;
    for (u, v) in g.edges() {
        let (us, vs) = (in_s[u as usize], in_s[v as usize]);
        if us {
            vol_s += 1;
        } else {
            vol_sbar += 1;
        }
        match (us, vs) {
            (true, true) => internal_s += 1,
            (false, false) => internal_sbar += 1,
            _ => cut += 1,
        }
    }

    let mut total3 = 0u64;
    let mut all_in_s = 0u64;
    let mut all_in_sbar = 0u64;
    let mut touch_s = 0u64;
    let mut touch_sbar = 0u64;
    for i in 0..n as u32 {
        for j in 0..n as u32 {
            for k in 0..n as u32 {
                let v = t.value(i, j, k) as u64;
                if v == 0 {
                    continue;
                }
                total3 += v;
                let a = in_s[i as usize];
                let b = in_s[j as usize];
                let c = in_s[k as usize];
                if a && b && c {
                    all_in_s += v;
                }
                if !a && !b && !c {
                    all_in_sbar += v;
                }
                if a || b || c {
                    touch_s += v;
                }
                if !a || !b || !c {
                    touch_sbar += v;
                }
            }
        }
    }
    let cut3 = total3 - all_in_s - all_in_sbar;

    let min_vol = vol_s.min(vol_sbar);
    let phi = if min_vol == 0 {
        f64::INFINITY
    } else {
        cut as f64 / min_vol as f64
    };
    let ncut = if vol_s == 0 || vol_sbar == 0 {
        f64::INFINITY
    } else {
        cut as f64 * (1.0 / vol_s as f64 + 1.0 / vol_sbar as f64)
    };
    let rho = cut as f64 / size_s.min(n - size_s) as f64;
    let min_vol3 = touch_s.min(touch_sbar);
    let phi3 = if min_vol3 == 0 {
        1.0
    } else {
        cut3 as f64 / min_vol3 as f64
    };
    let rho3 = cut3 as f64 / size_s.min(n - size_s) as f64;

    let (smaller_size, smaller_internal) = if size_s <= n - size_s {
        (size_s, internal_s)
    } else {
        (n - size_s, internal_sbar)
    };
    let density_smaller = if smaller_size < 2 {
        0.0
    } else {
        smaller_internal as f64 / (smaller_size * (smaller_size - 1)) as f64
    };

    Ok(BruteScores {
        cut,
        vol_s,
        vol_sbar,
        phi,
        ncut,
        rho,
        cut3,
        vol3_s: touch_s,
        vol3_sbar: touch_sbar,
        phi3,
        rho3,
        density_smaller,
    })
}

/// Independent linear PageRank by plain power iteration; oracle for the
/// degenerate (first-order) multilinear case.
pub fn linear_pagerank(
    g: &DirectedGraph,
    alpha: f64,
    v: &[f64],
    u: &[f64],
    tol: f64,
    max_iters: usize,
) -> Vec<f64> {
    let n = g.n();
    let mut x = v.to_vec();
    for _ in 0..max_iters {
        let mut dangling = 0.0;
        for j in 0..n as u32 {
            if g.out(j).is_empty() {
                dangling += x[j as usize];
            }
        }
        let mut next = vec![0.0; n];
        for (j, k) in g.edges() {
            next[k as usize] += x[j as usize] / g.out(j).len() as f64;
        }
        for i in 0..n {
            next[i] = alpha * (next[i] + dangling * u[i]) + (1.0 - alpha) * v[i];
        }
        let step: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = next;
        if step <= tol {
            break;
        }
    }
    x
}

// ---------------------------------------------------------------------------
// Dense linear algebra: Hessenberg + Francis QR for nonsymmetric spectra,
// inverse iteration for left eigenvectors, cyclic Jacobi for symmetric
// matrices, and an SVD built on the Jacobi solver. Test-scale only.
// ---------------------------------------------------------------------------

/// Eigenvalue as a (re, im) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenValue {
    pub re: f64,
    pub im: f64,
}

impl EigenValue {
    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.im.abs() <= tol
    }
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

/// Householder reduction to upper Hessenberg form (in place on a copy).
fn hessenberg(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut h: Vec<Vec<f64>> = a.to_vec();
    for col in 0..n.saturating_sub(2) {
        let mut norm = 0.0;
        for i in (col + 1)..n {
            norm += h[i][col] * h[i][col];
        }
        norm = norm.sqrt();
        if norm <= 1e-300 {
            continue;
        }
        let alpha = if h[col + 1][col] >= 0.0 { -norm } else { norm };
        let mut v = vec![0.0; n];
        v[col + 1] = h[col + 1][col] - alpha;
        for i in (col + 2)..n {
            v[i] = h[i][col];
        }
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 <= 1e-300 {
            continue;
        }
        // H <- (I - 2vv'/v'v) H (I - 2vv'/v'v)
        for j in 0..n {
            let dot: f64 = (0..n).map(|i| v[i] * h[i][j]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in 0..n {
                h[i][j] -= f * v[i];
            }
        }
        for i in 0..n {
            let dot: f64 = (0..n).map(|j| h[i][j] * v[j]).sum();
            let f = 2.0 * dot / vnorm2;
            for j in 0..n {
                h[i][j] -= f * v[j];
            }
        }
    }
    h
}

/// Householder QR factorization; returns Q (orthogonal).
fn qr_q(c: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = c.len();
    let mut r: Vec<Vec<f64>> = c.to_vec();
    let mut q: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for col in 0..n.saturating_sub(1) {
        let mut norm = 0.0;
        for i in col..n {
            norm += r[i][col] * r[i][col];
        }
        norm = norm.sqrt();
        if norm <= 1e-300 {
            continue;
        }
        let alpha = if r[col][col] >= 0.0 { -norm } else { norm };
        let mut v = vec![0.0; n];
        v[col] = r[col][col] - alpha;
        for i in (col + 1)..n {
            v[i] = r[i][col];
        }
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 <= 1e-300 {
            continue;
        }
        for j in 0..n {
            let dot: f64 = (col..n).map(|i| v[i] * r[i][j]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in col..n {
                r[i][j] -= f * v[i];
            }
        }
        // Q accumulates the reflections on the right: Q <- Q (I - 2vv'/v'v).
        for i in 0..n {
            let dot: f64 = (col..n).map(|j| q[i][j] * v[j]).sum();
            let f = 2.0 * dot / vnorm2;
            for j in col..n {
                q[i][j] -= f * v[j];
            }
        }
    }
    q
}

fn solve_2x2(a11: f64, a12: f64, a21: f64, a22: f64) -> [EigenValue; 2] {
    let tr = a11 + a22;
    let det = a11 * a22 - a12 * a21;
    let disc = tr * tr / 4.0 - det;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        [
            EigenValue {
                re: tr / 2.0 + sq,
                im: 0.0,
            },
            EigenValue {
                re: tr / 2.0 - sq,
                im: 0.0,
            },
        ]
    } else {
        let sq = (-disc).sqrt();
        [
            EigenValue {
                re: tr / 2.0,
                im: sq,
            },
            EigenValue {
                re: tr / 2.0,
                im: -sq,
            },
        ]
    }
}

/// Eigenvalues of a general real matrix by explicit double-shift QR steps on
/// the (re-)Hessenberg form of the bottom active block, with occasional
/// exceptional shifts to break the stalls that cyclic spectra (roots of
/// unity) cause. Deliberately simple; test-scale inputs only.
pub fn dense_eigenvalues(a: &[Vec<f64>]) -> Result<Vec<EigenValue>> {
    let n = a.len();
    check_size(n)?;
    for row in a {
        if row.len() != n {
            return Err(Error::InvalidConfig("matrix is not square".into()));
        }
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = hessenberg(a);
    let mut eigs: Vec<EigenValue> = Vec::new();
    let mut hi = n - 1;
    let mut stall = 0usize;
    let mut total_iters = 0usize;
    let eps = 1e-13;

    loop {
        total_iters += 1;
        if total_iters > 600 * n + 4000 {
            return Err(Error::InvalidConfig("qr iteration did not converge".into()));
        }
        if hi == 0 {
            eigs.push(EigenValue {
                re: h[0][0],
                im: 0.0,
            });
            break;
        }
        // Deflation scan: find the start of the bottom undeflated block.
        let mut lo = hi;
        while lo > 0 {
            let s = h[lo - 1][lo - 1].abs() + h[lo][lo].abs();
            if h[lo][lo - 1].abs() <= eps * s.max(1e-30) {
                h[lo][lo - 1] = 0.0;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eigs.push(EigenValue {
                re: h[hi][hi],
                im: 0.0,
            });
            hi -= 1;
            stall = 0;
            continue;
        }
        if lo + 1 == hi {
            let [e1, e2] = solve_2x2(h[lo][lo], h[lo][hi], h[hi][lo], h[hi][hi]);
            eigs.push(e1);
            eigs.push(e2);
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            stall = 0;
            continue;
        }

        stall += 1;
        let (s, p) = if stall.is_multiple_of(13) {
            let w = h[hi][hi - 1].abs() + h[hi - 1][hi - 2].abs();
            (1.5 * w, w * w)
        } else {
            let a11 = h[hi - 1][hi - 1];
            let a12 = h[hi - 1][hi];
            let a21 = h[hi][hi - 1];
            let a22 = h[hi][hi];
            (a11 + a22, a11 * a22 - a12 * a21)
        };

        // Explicit double-shift step on the active block, which sits in a
        // block-triangular position, so transforming it alone preserves the
        // full spectrum: C = B^2 - s B + p I, B <- Q' B Q for C = QR.
        let b = hi - lo + 1;
        let block: Vec<Vec<f64>> = (lo..=hi)
            .map(|i| (lo..=hi).map(|j| h[i][j]).collect())
            .collect();
        let mut c = mat_mul(&block, &block);
        for i in 0..b {
            for j in 0..b {
                c[i][j] -= s * block[i][j];
            }
            c[i][i] += p;
        }
        let q = qr_q(&c);
        // B' = Q' B Q.
        let bq = mat_mul(&block, &q);
        let mut next = vec![vec![0.0; b]; b];
        for i in 0..b {
            for j in 0..b {
                let mut acc = 0.0;
                for k in 0..b {
                    acc += q[k][i] * bq[k][j];
                }
                next[i][j] = acc;
            }
        }
        // Restore Hessenberg structure of the block (another similarity).
        let next = hessenberg(&next);
        for i in 0..b {
            for j in 0..b {
                h[lo + i][lo + j] = next[i][j];
            }
        }
    }

    eigs.sort_by(|a, b| {
        b.modulus()
            .partial_cmp(&a.modulus())
            .unwrap()
            .then(b.re.partial_cmp(&a.re).unwrap())
            .then(b.im.partial_cmp(&a.im).unwrap())
    });
    Ok(eigs)
}

/// LU decomposition with partial pivoting; solves in place.
fn lu_solve(a: &mut [Vec<f64>], b: &mut [f64]) -> bool {
    let n = b.len();
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let mut piv = col;
        for r in (col + 1)..n {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col].abs() < 1e-300 {
            return false;
        }
        a.swap(col, piv);
        perm.swap(col, piv);
        b.swap(col, piv);
        for r in (col + 1)..n {
            let f = a[r][col] / a[col][col];
            a[r][col] = 0.0;
            for c in (col + 1)..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    for col in (0..n).rev() {
        b[col] /= a[col][col];
        for r in 0..col {
            b[r] -= a[r][col] * b[col];
        }
    }
    true
}

/// Left eigenvector of `a` for a (nearly) real simple eigenvalue, by inverse
/// iteration on the transpose. Returns a unit vector.
pub fn dense_left_eigenvector(a: &[Vec<f64>], lambda: f64) -> Result<Vec<f64>> {
    let n = a.len();
    check_size(n)?;
    let shift = lambda + 1e-9;
    let mut w: Vec<f64> = (0..n).map(|i| 1.0 + (i as f64) * 1e-3).collect();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nv = norm(&w);
    for x in w.iter_mut() {
        *x /= nv;
    }
    for _ in 0..50 {
        // (A' - shift I) y = w
        let mut m: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| a[j][i] - if i == j { shift } else { 0.0 })
                    .collect()
            })
            .collect();
        let mut y = w.clone();
        if !lu_solve(&mut m, &mut y) {
            return Err(Error::InvalidConfig(
                "singular shift in inverse iteration".into(),
            ));
        }
        let ny = norm(&y);
        if !ny.is_finite() || ny <= 1e-300 {
            return Err(Error::InvalidConfig("inverse iteration broke down".into()));
        }
        for x in y.iter_mut() {
            *x /= ny;
        }
        let delta: f64 = y
            .iter()
            .zip(&w)
            .map(|(p, q)| (p - q).abs().min((p + q).abs()))
            .sum();
        w = y;
        if delta < 1e-14 {
            break;
        }
    }
    Ok(w)
}

/// Cyclic Jacobi eigensolver for symmetric matrices. Returns eigenvalues
/// (descending) and matching orthonormal eigenvectors as columns.
pub fn jacobi_symmetric(a: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.len();
    check_size(n)?;
    let mut m = a.to_vec();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m[i][j] * m[i][j];
            }
        }
        if off.sqrt() < 1e-14 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[k][p], v[k][q]);
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j][j].partial_cmp(&m[i][i]).unwrap());
    let eigvals: Vec<f64> = order.iter().map(|&i| m[i][i]).collect();
    let eigvecs: Vec<Vec<f64>> = (0..n)
        .map(|r| order.iter().map(|&c| v[r][c]).collect())
        .collect();
    Ok((eigvals, eigvecs))
}

/// Dense SVD of a square matrix through the Jacobi eigensolver on `A'A`.
/// Returns (singular values descending, U columns, V columns).
#[allow(clippy::type_complexity)]
pub fn dense_svd(a: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    let n = a.len();
    check_size(n)?;
    let at: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect();
    let gram = mat_mul(&at, a);
    let (lambda, v) = jacobi_symmetric(&gram)?;
    let sigma: Vec<f64> = lambda.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let mut u = vec![vec![0.0; n]; n];
    for col in 0..n {
        if sigma[col] > 1e-12 {
            for i in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += a[i][k] * v[k][col];
                }
                u[i][col] = s / sigma[col];
            }
        }
    }
    Ok((sigma, u, v))
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let ranks = |v: &[f64]| -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&i, &j| v[i].partial_cmp(&v[j]).unwrap().then(i.cmp(&j)));
        let mut r = vec![0.0; v.len()];
        let mut pos = 0;
        while pos < idx.len() {
            let mut end = pos;
            while end + 1 < idx.len() && v[idx[end + 1]] == v[idx[pos]] {
                end += 1;
            }
            let avg = (pos + end) as f64 / 2.0;
            for &i in &idx[pos..=end] {
                r[i] = avg;
            }
            pos = end + 1;
        }
        r
    };
    let ra = ranks(a);
    let rb = ranks(b);
    let n = a.len() as f64;
    let mean = (n - 1.0) / 2.0;
    let mut num = 0.0;
    let mut da = 0.0;
    let mut db = 0.0;
    for i in 0..a.len() {
        let x = ra[i] - mean;
        let y = rb[i] - mean;
        num += x * y;
        da += x * x;
        db += y * y;
    }
    num / (da.sqrt() * db.sqrt())
}
