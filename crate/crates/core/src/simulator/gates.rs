use num_complex::Complex64;

use super::StateVector;
use crate::error::{Error, Result};

/// Gates used by the evolution and correlator circuits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    /// Phase gate `diag(1, e^{iλ})`.
    P(usize, f64),
    /// `exp(−iθσʸ/2)`.
    RY(usize, f64),
    CX {
        control: usize,
        target: usize,
    },
}

impl StateVector {
    pub fn apply(&mut self, gate: Gate) -> Result<()> {
        match gate {
            Gate::H(q) => {
                self.check_qubit(q)?;
                let h = std::f64::consts::FRAC_1_SQRT_2;
                self.pairs(q, |a, b| ((a + b) * h, (a - b) * h));
            }
            Gate::X(q) => {
                self.check_qubit(q)?;
                self.pairs(q, |a, b| (b, a));
            }
            Gate::P(q, lambda) => {
                self.check_qubit(q)?;
                let phase = Complex64::from_polar(1.0, lambda);
                self.pairs(q, |a, b| (a, b * phase));
            }
            Gate::RY(q, theta) => {
                self.check_qubit(q)?;
                let (s, c) = (theta / 2.0).sin_cos();
                self.pairs(q, |a, b| (a * c - b * s, a * s + b * c));
            }
            Gate::CX { control, target } => {
                self.check_qubit(control)?;
                self.check_qubit(target)?;
                if control == target {
                    return Err(Error::RepeatedQubit(control));
                }
                let (cbit, tbit) = (1usize << control, 1usize << target);
                for b in 0..self.amps.len() {
                    if b & cbit != 0 && b & tbit == 0 {
                        self.amps.swap(b, b | tbit);
                    }
                }
            }
        }
        Ok(())
    }

    /// Runs `f(amp₀, amp₁)` over every index pair differing only in bit `q`.
    fn pairs(&mut self, q: usize, f: impl Fn(Complex64, Complex64) -> (Complex64, Complex64)) {
        let stride = 1usize << q;
        for block in self.amps.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                (*a, *b) = f(*a, *b);
            }
        }
    }
}
