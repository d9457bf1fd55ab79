use super::{DiffModule, Operator};
use crate::error::{Error, Result};
use crate::scalar::{Matrix, Scalar, Var};

/// A cyclic vector with its transition matrix `W = [m, ∇m, …, ∇^{μ−1}m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicVector {
    pub vector: Vec<Scalar>,
    pub transition: Matrix,
    /// `∇^μ m`.
    pub top: Vec<Scalar>,
    /// Position of the winning candidate in the schedule.
    pub attempt: usize,
}

/// The fixed candidate list: standard basis vectors, sums of distinct basis
/// vectors (by size, then lexicographically), then `Σ x^{k·i} e_i` for
/// `k = 1..2μ`.
pub fn candidate_schedule(mu: usize) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    for i in 0..mu {
        let mut v = vec![Scalar::zero(); mu];
        v[i] = Scalar::one();
        out.push(v);
    }
    for size in 2..=mu {
        for subset in subsets(mu, size) {
            let mut v = vec![Scalar::zero(); mu];
            for i in subset {
                v[i] = Scalar::one();
            }
            out.push(v);
        }
    }
    for k in 1..=(2 * mu) as i64 {
        let v = (0..mu as i64)
            .map(|i| Scalar::var(Var::X).pow(k * i).expect("nonnegative power"))
            .collect();
        out.push(v);
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
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

pub fn cyclic_vector(m: &DiffModule) -> Result<CyclicVector> {
    let mu = m.rank();
    for (attempt, cand) in candidate_schedule(mu).into_iter().enumerate() {
        let mut cols = Vec::with_capacity(mu);
        let mut cur = cand.clone();
        for _ in 0..mu {
            let next = m.apply(&cur);
            cols.push(cur);
            cur = next;
        }
        let w = Matrix::from_columns(&cols);
        if w.rank() == mu {
            return Ok(CyclicVector {
                vector: cand,
                transition: w,
                top: cur,
                attempt,
            });
        }
    }
    Err(Error::CyclicSearchExhausted)
}

/// The monic operator annihilating the cyclic vector: `W·a = −∇^μ m`.
pub fn to_operator(m: &DiffModule) -> Result<(Operator, CyclicVector)> {
    let cv = cyclic_vector(m)?;
    let rhs: Vec<Scalar> = cv.top.iter().map(|e| -e).collect();
    let a = cv.transition.solve_vec(&rhs)?;
    Ok((Operator::new(a)?, cv))
}
