//! Random rational data and a naive exterior algebra used as an oracle.
//!
//! The oracle stores forms as maps from sorted index lists to coefficients and
//! computes signs by counting inversions, sharing no code with the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

use gengeo::matrix::Matrix;
use gengeo::multilinear::clifford::GeneralizedVector;
use gengeo::multilinear::form::FormSpinor;
use gengeo::scalar::{Cq, Q};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rational(rng: &mut ChaCha8Rng) -> Q {
    Q::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into())
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> Cq {
    Cq::new(rational(rng), rational(rng))
}

pub fn real(rng: &mut ChaCha8Rng) -> Cq {
    Cq::new(rational(rng), Q::zero())
}

pub fn random_form(rng: &mut ChaCha8Rng, dim: usize) -> FormSpinor<Cq> {
    let mut f = FormSpinor::zero(dim);
    for m in 0..1u32 << dim {
        if rng.gen_bool(0.5) {
            f.add_term(m, gaussian(rng));
        }
    }
    f
}

pub fn random_gv(rng: &mut ChaCha8Rng, dim: usize) -> GeneralizedVector<Cq> {
    GeneralizedVector::new((0..dim).map(|_| gaussian(rng)).collect(), (0..dim).map(|_| gaussian(rng)).collect())
}

pub fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> Matrix<Cq> {
    Matrix::from_fn(dim, dim, |_, _| real(rng))
}

pub fn random_antisymmetric(rng: &mut ChaCha8Rng, dim: usize) -> Matrix<Cq> {
    let upper = Matrix::from_fn(dim, dim, |i, j| if i < j { real(rng) } else { Cq::zero() });
    upper.sub(&upper.transpose())
}

/// Random symmetric positive-definite rational matrix `AᵀA + 1`.
pub fn random_metric(rng: &mut ChaCha8Rng, dim: usize) -> Matrix<Cq> {
    let a = random_matrix(rng, dim);
    a.transpose().mul(&a).add(&Matrix::identity(dim))
}

pub type Naive = BTreeMap<Vec<usize>, Cq>;

pub fn to_naive(f: &FormSpinor<Cq>) -> Naive {
    f.terms()
        .map(|(mask, c)| ((0..f.dim()).filter(|i| mask & (1 << i) != 0).collect(), c.clone()))
        .collect()
}

fn push(out: &mut Naive, key: Vec<usize>, c: Cq) {
    let entry = out.entry(key.clone()).or_insert_with(Cq::zero);
    *entry = entry.clone() + c;
    if entry.is_zero() {
        out.remove(&key);
    }
}

fn clean(f: Naive) -> Naive {
    f.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Sorts the concatenation, returning `None` on a repeated index.
fn sort_with_sign(idx: Vec<usize>) -> Option<(Vec<usize>, bool)> {
    let mut inversions = 0;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] == idx[j] {
                return None;
            }
            if idx[i] > idx[j] {
                inversions += 1;
            }
        }
    }
    let mut sorted = idx;
    sorted.sort_unstable();
    Some((sorted, inversions % 2 == 1))
}

pub fn wedge(a: &Naive, b: &Naive) -> Naive {
    let mut out = Naive::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let cat: Vec<usize> = ka.iter().chain(kb.iter()).copied().collect();
            if let Some((key, odd)) = sort_with_sign(cat) {
                let c = ca.clone() * cb.clone();
                push(&mut out, key, if odd { -c } else { c });
            }
        }
    }
    clean(out)
}

pub fn contract(x: &[Cq], f: &Naive) -> Naive {
    let mut out = Naive::new();
    for (k, c) in f {
        for (pos, &i) in k.iter().enumerate() {
            if x[i].is_zero() {
                continue;
            }
            let mut rest = k.clone();
            rest.remove(pos);
            let v = c.clone() * x[i].clone();
            push(&mut out, rest, if pos % 2 == 1 { -v } else { v });
        }
    }
    clean(out)
}

pub fn one_form(xi: &[Cq]) -> Naive {
    clean(xi.iter().enumerate().map(|(i, c)| (vec![i], c.clone())).collect())
}

pub fn add(a: &Naive, b: &Naive) -> Naive {
    let mut out = a.clone();
    for (k, c) in b {
        push(&mut out, k.clone(), c.clone());
    }
    clean(out)
}

pub fn reverse(f: &Naive) -> Naive {
    f.iter()
        .map(|(k, c)| {
            let n = k.len();
            (k.clone(), if (n * n.saturating_sub(1) / 2) % 2 == 1 { -c.clone() } else { c.clone() })
        })
        .collect()
}

pub fn clifford(v: &GeneralizedVector<Cq>, f: &Naive) -> Naive {
    add(&contract(&v.vector, f), &wedge(&one_form(&v.covector), f))
}

pub fn top(f: &Naive, dim: usize) -> Cq {
    f.get(&(0..dim).collect::<Vec<_>>()).cloned().unwrap_or_else(Cq::zero)
}

/// `[α ∧ σ(β)]_top`.
pub fn mukai(a: &Naive, b: &Naive, dim: usize) -> Cq {
    top(&wedge(a, &reverse(b)), dim)
}

/// `e^B = Σ B^k / k!` with `B = Σ_{i<j} b_ij e^{ij}`.
pub fn exp_b(b: &Matrix<Cq>) -> Naive {
    let dim = b.rows();
    let mut two = Naive::new();
    for i in 0..dim {
        for j in i + 1..dim {
            push(&mut two, vec![i, j], b[(i, j)].clone());
        }
    }
    let two = clean(two);
    let mut sum: Naive = [(vec![], Cq::new(Q::from_integer(1.into()), Q::zero()))].into_iter().collect();
    let mut term = sum.clone();
    for k in 1..=dim / 2 {
        term = wedge(&term, &two);
        let inv = Cq::new(Q::new(1.into(), (k as i64).into()), Q::zero());
        term = term.into_iter().map(|(key, c)| (key, c * inv.clone())).collect();
        sum = add(&sum, &term);
    }
    sum
}

/// Naive split pairing `½(ξ(Y) + η(X))`.
pub fn split(u: &GeneralizedVector<Cq>, v: &GeneralizedVector<Cq>) -> Cq {
    let mut s = Cq::zero();
    for i in 0..u.dim() {
        s = s + u.covector[i].clone() * v.vector[i].clone() + v.covector[i].clone() * u.vector[i].clone();
    }
    s * Cq::new(Q::new(1.into(), 2.into()), Q::zero())
}
