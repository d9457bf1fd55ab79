use std::fmt;

use super::field::Scalar;
use super::matrix::Matrix;

/// Univariate polynomial with [`Scalar`] coefficients, lowest degree first.
///
/// The indeterminate is external to the scalar tower (an eigenvalue variable
/// `λ` or the derivation `θ`); `symbol` only affects printing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<Scalar>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> UPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> UPoly {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> UPoly {
        UPoly::new(vec![Scalar::one()])
    }

    /// `λ - r`.
    pub fn linear(root: &Scalar) -> UPoly {
        UPoly::new(vec![-root, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self
            .leading()
            .inv()
            .expect("leading coefficient is nonzero");
        UPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    /// Multiplicity of the root `0`.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Removes the factor `λ^k`.
    pub fn shift_down(&self, k: usize) -> UPoly {
        UPoly::new(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    pub fn eval(&self, at: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&Matrix::identity(n).scale(c));
        }
        acc
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UPoly::new(out)
    }

    /// Quotient and remainder by `λ - r`.
    pub fn divide_linear(&self, r: &Scalar) -> (UPoly, Scalar) {
        if self.is_zero() {
            return (UPoly::zero(), Scalar::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![Scalar::zero(); n - 1];
        let mut carry = Scalar::zero();
        for k in (0..n).rev() {
            let v = &self.coeffs[k] + &(&carry * r);
            if k == 0 {
                return (UPoly::new(q), v);
            }
            q[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Replaces the indeterminate by `λ^k`.
    pub fn compose_power(&self, k: usize) -> UPoly {
        let mut out = vec![Scalar::zero(); self.degree() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        UPoly::new(out)
    }

    pub fn display(&self, symbol: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut s = c.to_string();
            let simple = c.is_polynomial() && c.numerator().len() == 1;
            let neg = simple && s.starts_with('-');
            if neg {
                s.remove(0);
            }
            if !out.is_empty() {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let power = match k {
                0 => String::new(),
                1 => symbol.to_string(),
                _ => format!("{symbol}^{k}"),
            };
            if k == 0 {
                if simple {
                    out.push_str(&s);
                } else {
                    out.push_str(&format!("({s})"));
                }
            } else if s == "1" {
                out.push_str(&power);
            } else if simple {
                out.push_str(&format!("{s}*{power}"));
            } else {
                out.push_str(&format!("({s})*{power}"));
            }
        }
        out
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("L"))
    }
}
