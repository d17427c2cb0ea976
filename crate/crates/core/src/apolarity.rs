//! Contraction of forms by constant-coefficient differential operators.
//!
//! An operator monomial `y^a` acts on `x^b` by honest iterated
//! differentiation: `y^a ⌟ x^b = (∏ b_i!/(b_i−a_i)!) x^{b−a}` when `a ≤ b`
//! and zero otherwise. No apolarity rescaling is applied.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactla::{rank_kernel, Matrix};
use crate::field::FieldSpec;
use crate::polyring::{monomial_basis, Monomial, Polynomial};

fn falling_factorial_coeff(b: &Monomial, a: &Monomial) -> Option<BigInt> {
    let mut acc = BigInt::one();
    for (&bi, &ai) in b.exponents().iter().zip(a.exponents()) {
        if ai > bi {
            return None;
        }
        for t in 0..ai {
            acc *= BigInt::from(bi - t);
        }
    }
    Some(acc)
}

/// `D ⌟ G`. `G` must be homogeneous (or zero).
pub fn contract(d: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if d.field() != g.field() {
        return Err(Error::MixedFields);
    }
    if d.n_vars() != g.n_vars() {
        return Err(Error::VariableCount {
            expected: g.n_vars(),
            found: d.n_vars(),
        });
    }
    if !g.is_zero() && g.homogeneous_degree().is_none() {
        return Err(Error::NotHomogeneous);
    }
    Ok(contract_unchecked(d, g))
}

pub(crate) fn contract_unchecked(d: &Polynomial, g: &Polynomial) -> Polynomial {
    let field = g.field();
    let mut out = Polynomial::zero(g.n_vars(), field);
    for (a, c) in d.terms() {
        for (b, gc) in g.terms() {
            if let Some(k) = falling_factorial_coeff(b, a) {
                let m = b.checked_div(a).unwrap();
                out.add_term(m, &(c * gc) * &field.from_bigint(&k));
            }
        }
    }
    out
}

/// The map `Q^i → S^{d−i}`, `D ↦ D ⌟ G`, with monomial labels.
#[derive(Debug, Clone)]
pub struct Catalecticant {
    pub form: Polynomial,
    pub source_degree: usize,
    pub matrix: Matrix,
}

impl Catalecticant {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Operator monomials of the source, in column order.
    pub fn source_monomials(&self) -> &[Monomial] {
        self.matrix.col_labels().unwrap()
    }
}

fn form_degree(g: &Polynomial) -> Result<usize> {
    if g.is_zero() {
        return Err(Error::ZeroForm);
    }
    g.homogeneous_degree().ok_or(Error::NotHomogeneous)
}

pub fn catalecticant(g: &Polynomial, i: usize) -> Result<Catalecticant> {
    let d = form_degree(g)?;
    if i > d {
        return Err(Error::DegreeOutOfRange { degree: i, max: d });
    }
    let n = g.n_vars();
    let field = g.field();
    let cols = monomial_basis(n, i);
    let rows = monomial_basis(n, d - i);
    let row_index: HashMap<&Monomial, usize> = rows.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut matrix = Matrix::zeros(rows.len(), cols.len(), field);
    for (j, a) in cols.iter().enumerate() {
        for (b, gc) in g.terms() {
            if let Some(k) = falling_factorial_coeff(b, a) {
                let r = row_index[&b.checked_div(a).unwrap()];
                let v = matrix.get(r, j) + &(gc * &field.from_bigint(&k));
                matrix.set(r, j, v);
            }
        }
    }
    let matrix = matrix.with_labels(rows, cols)?;
    Ok(Catalecticant {
        form: g.clone(),
        source_degree: i,
        matrix,
    })
}

fn vector_to_operator(n: usize, field: FieldSpec, monos: &[Monomial], v: &[crate::field::Scalar]) -> Polynomial {
    Polynomial::from_terms(n, field, monos.iter().cloned().zip(v.iter().cloned()))
}

/// A basis of `Ann(G)^i`, the kernel of the degree-`i` catalecticant.
pub fn annihilator_piece(g: &Polynomial, i: usize) -> Result<Vec<Polynomial>> {
    let cat = catalecticant(g, i)?;
    let k = rank_kernel(&cat.matrix);
    Ok(k.kernel_basis
        .iter()
        .map(|v| vector_to_operator(g.n_vars(), g.field(), cat.source_monomials(), v))
        .collect())
}

/// `true` when the first partials of `G` are linearly dependent.
pub fn is_cone(g: &Polynomial) -> Result<bool> {
    let d = form_degree(g)?;
    if d == 0 {
        return Err(Error::Precondition("a cone test needs degree at least 1".into()));
    }
    Ok(catalecticant(g, 1)?.rank() < g.n_vars())
}
