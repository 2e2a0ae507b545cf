//! Dense matrix oracle for small Pauli strings (n <= 5).

#![allow(dead_code)]

use dla_core::pauli::{Letter, PauliString};
use num_complex::Complex64;

pub const MAX_DENSE_QUBITS: usize = 5;
const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn letter(l: Letter) -> Dense {
    let (o, one) = (c(0.0, 0.0), c(1.0, 0.0));
    let data = match l {
        Letter::I => vec![one, o, o, one],
        Letter::X => vec![o, one, one, o],
        Letter::Y => vec![o, c(0.0, -1.0), c(0.0, 1.0), o],
        Letter::Z => vec![one, o, o, -one],
    };
    Dense { dim: 2, data }
}

impl Dense {
    pub fn identity(dim: usize) -> Dense {
        let mut data = vec![c(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = c(1.0, 0.0);
        }
        Dense { dim, data }
    }

    /// Site 0 is the most significant tensor factor.
    pub fn from_pauli(p: &PauliString) -> Dense {
        assert!(p.n() <= MAX_DENSE_QUBITS, "dense oracle is capped at {MAX_DENSE_QUBITS} qubits");
        let mut m = Dense { dim: 1, data: vec![c(1.0, 0.0)] };
        for j in 0..p.n() {
            m = m.kron(&letter(p.letter(j)));
        }
        let phase = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)][p.phase_exp() as usize];
        m.scale(phase)
    }

    pub fn kron(&self, other: &Dense) -> Dense {
        let dim = self.dim * other.dim;
        let mut data = vec![c(0.0, 0.0); dim * dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.data[i * self.dim + j];
                for k in 0..other.dim {
                    for l in 0..other.dim {
                        data[(i * other.dim + k) * dim + j * other.dim + l] = a * other.data[k * other.dim + l];
                    }
                }
            }
        }
        Dense { dim, data }
    }

    pub fn mul(&self, other: &Dense) -> Dense {
        let d = self.dim;
        let mut data = vec![c(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == c(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        Dense { dim: d, data }
    }

    pub fn add(&self, other: &Dense) -> Dense {
        Dense { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Dense) -> Dense {
        Dense { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: Complex64) -> Dense {
        Dense { dim: self.dim, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn transpose(&self) -> Dense {
        let d = self.dim;
        let mut data = vec![c(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                data[j * d + i] = self.data[i * d + j];
            }
        }
        Dense { dim: d, data }
    }

    pub fn commutator(&self, other: &Dense) -> Dense {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.norm() < TOL)
    }

    pub fn approx_eq(&self, other: &Dense) -> bool {
        self.dim == other.dim && self.sub(other).is_zero()
    }

    /// `self = s * other` for some nonzero scalar `s`.
    pub fn proportional(&self, other: &Dense) -> bool {
        let Some(k) = other.data.iter().position(|a| a.norm() > TOL) else { return false };
        let s = self.data[k] / other.data[k];
        s.norm() > TOL && self.approx_eq(&other.scale(s))
    }

    /// `e^{iπ/4·a}` for a Hermitian Pauli `a` (so `a² = I`).
    pub fn quarter_rotation(a: &PauliString) -> Dense {
        let m = Dense::from_pauli(a);
        let id = Dense::identity(m.dim);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        id.add(&m.scale(c(0.0, 1.0))).scale(c(r, 0.0))
    }

    pub fn dagger(&self) -> Dense {
        let t = self.transpose();
        Dense { dim: t.dim, data: t.data.iter().map(|a| a.conj()).collect() }
    }
}
