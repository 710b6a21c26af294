//! Dense factorization and charge solutions.

use crate::error::BemError;
use crate::kernels::PotentialMatrix;
use crate::mesh::Mesh;
use faer::prelude::*;
use faer::Side;

/// Solves are rejected above this relative residual.
pub const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factorization {
    Cholesky,
    /// Fallback: the log kernel is not positive definite for every scale.
    Lu,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChargeSolution {
    /// Total charge per element (per unit length for planar meshes), ε = 1.
    pub charges: Vec<f64>,
    pub voltages: Vec<f64>,
    /// Charge on electrode 0 over the drive between electrodes 0 and 1.
    pub capacitance: f64,
    pub residual: f64,
    pub factorization: Factorization,
}

impl ChargeSolution {
    pub fn electrode_charge(&self, mesh: &Mesh, electrode: usize) -> f64 {
        mesh.elements.iter().zip(&self.charges).filter(|(e, _)| e.electrode == electrode).map(|(_, q)| q).sum()
    }

    /// `|Σq| / Σ|q|`.
    pub fn net_charge_ratio(&self) -> f64 {
        self.charges.iter().sum::<f64>().abs() / self.charges.iter().map(|q| q.abs()).sum::<f64>()
    }
}

enum Factor {
    Llt(faer::linalg::solvers::Llt<f64>),
    Lu(faer::linalg::solvers::PartialPivLu<f64>),
}

impl Factor {
    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let b = Mat::from_fn(rhs.len(), 1, |i, _| rhs[i]);
        let x = match self {
            Factor::Llt(f) => f.solve(&b),
            Factor::Lu(f) => f.solve(&b),
        };
        (0..rhs.len()).map(|i| x[(i, 0)]).collect()
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn residual(m: &PotentialMatrix, x: &[f64], b: &[f64]) -> f64 {
    let r: Vec<f64> = m.mul(x).iter().zip(b).map(|(a, b)| a - b).collect();
    norm(&r) / norm(b)
}

/// Hager's estimate of the 1-norm condition number (M is symmetric).
fn condition_estimate(m: &PotentialMatrix, f: &Factor) -> f64 {
    let n = m.n;
    let norm1 = (0..n).map(|j| (0..n).map(|i| m.get(i, j).abs()).sum::<f64>()).fold(0.0, f64::max);
    let mut x = vec![1.0 / n as f64; n];
    let mut est = 0.0;
    for _ in 0..5 {
        let y = f.solve(&x);
        est = y.iter().map(|v| v.abs()).sum::<f64>();
        let s: Vec<f64> = y.iter().map(|v| if *v >= 0.0 { 1.0 } else { -1.0 }).collect();
        let z = f.solve(&s);
        let (j, zmax) = z.iter().enumerate().fold((0, 0.0f64), |b, (i, v)| if v.abs() > b.1 { (i, v.abs()) } else { b });
        let zx: f64 = z.iter().zip(&x).map(|(a, b)| a * b).sum();
        if zmax <= zx {
            break;
        }
        x = vec![0.0; n];
        x[j] = 1.0;
    }
    norm1 * est
}

/// `q = M⁻¹ V` with V set per element from the electrode voltages.
pub fn solve(mesh: &Mesh, m: &PotentialMatrix) -> Result<ChargeSolution, BemError> {
    if m.n != mesh.len() {
        return Err(BemError::Mesh(format!("matrix is {}x{} but mesh has {} elements", m.n, m.n, mesh.len())));
    }
    if mesh.voltages.len() < 2 {
        return Err(BemError::Mesh("need two electrodes to define a capacitance".into()));
    }
    let rhs: Vec<f64> = mesh.elements.iter().map(|e| mesh.voltages[e.electrode]).collect();
    let a = Mat::from_fn(m.n, m.n, |i, j| m.get(i, j));
    let (factor, factorization) = match a.llt(Side::Lower) {
        Ok(l) => (Factor::Llt(l), Factorization::Cholesky),
        Err(_) => (Factor::Lu(a.partial_piv_lu()), Factorization::Lu),
    };
    let mut charges = factor.solve(&rhs);
    let mut res = residual(m, &charges, &rhs);
    if res > RESIDUAL_TOL && res.is_finite() {
        // one step of iterative refinement
        let r: Vec<f64> = m.mul(&charges).iter().zip(&rhs).map(|(a, b)| b - a).collect();
        let dx = factor.solve(&r);
        charges.iter_mut().zip(&dx).for_each(|(x, d)| *x += d);
        res = residual(m, &charges, &rhs);
    }
    if !(res <= RESIDUAL_TOL) {
        return Err(BemError::Solve { residual: res, condition: condition_estimate(m, &factor) });
    }
    let q0: f64 = mesh.elements.iter().zip(&charges).filter(|(e, _)| e.electrode == 0).map(|(_, q)| q).sum();
    let capacitance = q0 / (mesh.voltages[0] - mesh.voltages[1]);
    Ok(ChargeSolution { charges, voltages: mesh.voltages.clone(), capacitance, residual: res, factorization })
}

/// Assemble and solve in one step.
pub fn solve_mesh(mesh: &Mesh) -> Result<ChargeSolution, BemError> {
    let m = crate::kernels::build_matrix(mesh)?;
    solve(mesh, &m)
}
