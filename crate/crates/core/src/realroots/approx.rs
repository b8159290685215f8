//! Floating-point roots: companion-matrix eigenvalues, with nearby roots
//! merged into clusters that stand for one multiple root.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_1_PI, SQRT_2};

use nalgebra::{Complex, DMatrix, Schur};

use super::{JointRoot, JointRoots, RootBackend, RootInterval};
use crate::error::{Error, Result};
use crate::poly::UnivariatePoly;
use crate::scalar::Tolerance;

type Complex64 = Complex<f64>;

/// A cluster of numerically coincident roots.
#[derive(Clone, Debug, PartialEq)]
pub struct RootCluster {
    pub center: Complex64,
    pub radius: f64,
    pub multiplicity: u32,
}

impl RootCluster {
    pub fn is_real(&self, tol: &Tolerance) -> bool {
        self.center.im.abs() <= tol.cluster_radius() * self.center.norm().max(1.0)
    }
}

/// All complex roots of `p`, unsorted.
pub fn complex_roots(p: &UnivariatePoly<f64>) -> Result<Vec<Complex64>> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let c = p.coeffs();
    if n == 1 {
        return Ok(vec![Complex64::new(-c[0] / c[1], 0.0)]);
    }
    // unshifted QR can stall on orthogonal companions such as t^n + 1;
    // retry on a translated polynomial
    for shift in [0.0, FRAC_1_PI, -0.5772156649015329, SQRT_2] {
        let q = if shift == 0.0 {
            p.clone()
        } else {
            p.translate(&shift)
        };
        if let Some(roots) = companion_eigenvalues(&q) {
            let roots: Vec<Complex64> = roots.into_iter().map(|z| z + shift).collect();
            if roots.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
                return Ok(roots);
            }
        }
    }
    Err(Error::NonFinite)
}

fn companion_eigenvalues(p: &UnivariatePoly<f64>) -> Option<Vec<Complex64>> {
    let c = p.coeffs();
    let n = c.len() - 1;
    let lead = c[n];
    let mut companion = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        companion[(i, n - 1)] = -c[i] / lead;
    }
    let schur = Schur::try_new(companion, f64::EPSILON, 10_000)?;
    Some(schur.complex_eigenvalues().iter().copied().collect())
}

/// Groups roots closer than the cluster radius (single linkage).
pub fn cluster_roots(roots: &[Complex64], tol: &Tolerance) -> Vec<RootCluster> {
    let delta = tol.cluster_radius();
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = roots[i].norm().max(roots[j].norm()).max(1.0);
            if (roots[i] - roots[j]).norm() <= delta * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    let mut index_of = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if index_of[r] == usize::MAX {
            index_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[index_of[r]].push(roots[i]);
    }
    groups
        .into_iter()
        .map(|g| {
            let center = g.iter().sum::<Complex64>() / g.len() as f64;
            let radius = g.iter().map(|z| (z - center).norm()).fold(0.0, f64::max);
            RootCluster {
                center,
                radius,
                multiplicity: g.len() as u32,
            }
        })
        .collect()
}

/// Root clusters of `p` after trimming negligible leading coefficients.
pub fn root_clusters(p: &UnivariatePoly<f64>, tol: &Tolerance) -> Result<Vec<RootCluster>> {
    let trimmed = p.trimmed(tol.epsilon);
    if trimmed.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(cluster_roots(&complex_roots(&trimmed)?, tol))
}

impl RootBackend for f64 {
    fn joint_roots(polys: &[UnivariatePoly<f64>], tol: &Tolerance) -> Result<JointRoots<f64>> {
        let delta = tol.cluster_radius();
        // (center, radius, poly index, multiplicity)
        let mut found: Vec<(f64, f64, usize, u32)> = Vec::new();
        for (i, p) in polys.iter().enumerate() {
            if p.trimmed(tol.epsilon).is_zero() {
                continue;
            }
            for c in root_clusters(p, tol)? {
                if c.is_real(tol) {
                    found.push((c.center.re, c.radius, i, c.multiplicity));
                }
            }
        }
        found.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut roots: Vec<JointRoot<f64>> = Vec::new();
        let mut members: Vec<Vec<f64>> = Vec::new();
        for (center, radius, poly, mult) in found {
            if let Some(last) = roots.last_mut() {
                let c = last.approx;
                if (center - c).abs() <= delta * c.abs().max(center.abs()).max(1.0) {
                    let m = members.last_mut().expect("parallel vectors");
                    m.push(center);
                    let mean = m.iter().sum::<f64>() / m.len() as f64;
                    let r = radius
                        .max(last.interval.hi - mean)
                        .max(mean - last.interval.lo);
                    last.approx = mean;
                    last.interval = RootInterval::open(mean - r, mean + r, 1);
                    last.multiplicities[poly] += mult;
                    continue;
                }
            }
            let mut multiplicities = vec![0; polys.len()];
            multiplicities[poly] = mult;
            let r = radius.max(f64::EPSILON * center.abs().max(1.0));
            roots.push(JointRoot {
                interval: RootInterval::open(center - r, center + r, 1),
                multiplicities,
                basis_index: None,
                approx: center,
            });
            members.push(vec![center]);
        }
        Ok(JointRoots {
            roots,
            basis: Vec::new(),
        })
    }

    fn compare_with_root(roots: &JointRoots<f64>, index: usize, t: &f64) -> Ordering {
        let iv = &roots.roots[index].interval;
        if *t < iv.lo {
            Ordering::Less
        } else if *t > iv.hi {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }

    fn vanishes_at(
        poly: &UnivariatePoly<f64>,
        roots: &JointRoots<f64>,
        index: usize,
        tol: &Tolerance,
    ) -> bool {
        let t = roots.roots[index].approx;
        let scale: f64 = poly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c.abs() * t.abs().powi(i as i32))
            .sum();
        poly.eval(&t).abs() <= tol.epsilon.sqrt() * scale.max(f64::MIN_POSITIVE)
    }

    fn between(a: &f64, b: &f64) -> f64 {
        0.5 * (a + b)
    }

    fn below(a: &f64) -> f64 {
        a - 1.0
    }

    fn above(a: &f64) -> f64 {
        a + 1.0
    }

    fn trim(poly: &UnivariatePoly<f64>, tol: &Tolerance) -> UnivariatePoly<f64> {
        poly.trimmed(tol.epsilon)
    }
}
