//! Standard graded Artinian Gorenstein algebras given degree by degree.
//!
//! Each graded piece `R^i` is stored as the row-reduced form of the ideal (or
//! annihilator) piece inside the space of degree-`i` monomials. The monomials
//! that carry no pivot form the basis of `R^i`, and reducing a polynomial
//! means clearing its pivot coordinates with the ideal rows.

use std::collections::HashMap;

use serde::{Serialize, Serializer};

use crate::apolarity::catalecticant;
use crate::error::{Error, Result};
use crate::exactla::{modular_rank, rank_kernel, rref, Matrix};
use crate::field::{FieldSpec, Scalar};
use crate::polyring::{binomial, monomial_basis, Monomial, Polynomial};

/// Prime used for the cheap full-rank certificate in degree `N + 1`.
const CERTIFICATE_PRIME: u64 = 2_147_483_647;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Presentation {
    InverseSystem { form: Polynomial },
    RegularSequence { generators: Vec<Polynomial> },
    Quotient { parent: Box<Presentation>, alpha: Polynomial },
}

/// An element of `R^degree`, in coordinates on the monomial basis of that piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraElement {
    pub degree: usize,
    pub coords: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if self.degree != other.degree || self.coords.len() != other.coords.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coords.len(),
                found: other.coords.len(),
            });
        }
        Ok(AlgebraElement {
            degree: self.degree,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        AlgebraElement {
            degree: self.degree,
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }
}

#[derive(Debug, Clone)]
struct Piece {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Sparse rows of the reduced ideal piece, paired with their pivots.
    rows: Vec<(usize, Vec<(usize, Scalar)>)>,
    basis: Vec<usize>,
}

impl Piece {
    fn new(n_vars: usize, field: FieldSpec, degree: usize, spanning: Vec<Vec<Scalar>>) -> Piece {
        let monomials = monomial_basis(n_vars, degree);
        let index = monomials.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        let (rows, pivots) = if spanning.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            let r = rref(&Matrix::from_rows(field, spanning).expect("rows match the monomial count"));
            (r.rows, r.pivot_columns)
        };
        let mut is_pivot = vec![false; monomials.len()];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let basis = (0..monomials.len()).filter(|&j| !is_pivot[j]).collect();
        let rows = rows
            .into_iter()
            .zip(pivots)
            .map(|(row, c)| {
                let sparse = row
                    .into_iter()
                    .enumerate()
                    .filter(|(j, v)| *j != c && !v.is_zero())
                    .collect();
                (c, sparse)
            })
            .collect();
        Piece {
            monomials,
            index,
            rows,
            basis,
        }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn ideal_dim(&self) -> usize {
        self.rows.len()
    }

    fn vector_of(&self, p: &Polynomial) -> Vec<Scalar> {
        let mut v = vec![p.field().zero(); self.monomials.len()];
        for (m, c) in p.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    fn reduce_vector(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        // Rows are in reduced form, so one pass in pivot order suffices.
        for (c, row) in &self.rows {
            if v[*c].is_zero() {
                continue;
            }
            let zero = v[*c].field().zero();
            let f = std::mem::replace(&mut v[*c], zero);
            for (j, a) in row {
                v[*j] -= &(&f * a);
            }
        }
        self.basis.iter().map(|&j| v[j].clone()).collect()
    }

    /// The ideal piece as dense rows, for building quotients.
    fn ideal_rows(&self, field: FieldSpec) -> Vec<Vec<Scalar>> {
        self.rows
            .iter()
            .map(|(c, sparse)| {
                let mut v = vec![field.zero(); self.monomials.len()];
                v[*c] = field.one();
                for (j, a) in sparse {
                    v[*j] = a.clone();
                }
                v
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct GradedAlgebra {
    n_vars: usize,
    field: FieldSpec,
    presentation: Presentation,
    socle_degree: usize,
    hilbert: Vec<usize>,
    pieces: Vec<Piece>,
    letter: char,
    socle_scale: Scalar,
}

/// Perfect-pairing verdict for `R^s × R^{N−s} → R^N ≅ K`.
#[derive(Debug, Clone, Serialize)]
pub struct Pairing {
    pub s: usize,
    pub perfect: bool,
    pub matrix: Matrix,
}

fn expected_hilbert(degrees: &[usize]) -> Vec<usize> {
    let mut coeffs = vec![1usize];
    for &e in degrees {
        let mut next = vec![0usize; coeffs.len() + e - 1];
        for (i, &c) in coeffs.iter().enumerate() {
            for slot in &mut next[i..i + e] {
                *slot += c;
            }
        }
        coeffs = next;
    }
    coeffs
}

fn check_ring(polys: &[&Polynomial]) -> Result<(usize, FieldSpec)> {
    let first = polys.first().ok_or_else(|| Error::Precondition("no polynomials given".into()))?;
    for p in polys {
        if p.field() != first.field() {
            return Err(Error::MixedFields);
        }
        if p.n_vars() != first.n_vars() {
            return Err(Error::VariableCount {
                expected: first.n_vars(),
                found: p.n_vars(),
            });
        }
    }
    Ok((first.n_vars(), first.field()))
}

impl GradedAlgebra {
    /// `R = Q / Ann(G)`; the socle sits in degree `deg G`.
    pub fn from_inverse_system(g: &Polynomial) -> Result<GradedAlgebra> {
        if g.is_zero() {
            return Err(Error::ZeroForm);
        }
        let d = g.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        let (n, field) = (g.n_vars(), g.field());
        let mut pieces = Vec::with_capacity(d + 1);
        let mut hilbert = Vec::with_capacity(d + 1);
        for i in 0..=d {
            let k = rank_kernel(&catalecticant(g, i)?.matrix);
            hilbert.push(k.rank);
            pieces.push(Piece::new(n, field, i, k.kernel_basis));
        }
        Ok(GradedAlgebra {
            n_vars: n,
            field,
            presentation: Presentation::InverseSystem { form: g.clone() },
            socle_degree: d,
            hilbert,
            pieces,
            letter: 'y',
            socle_scale: field.one(),
        })
    }

    /// `R = S / (f_0, …, f_n)`, accepted only when the Hilbert function is
    /// that of a complete intersection with these degrees and `R^{N+1} = 0`.
    pub fn from_regular_sequence(gens: &[Polynomial]) -> Result<GradedAlgebra> {
        let (n, field) = check_ring(&gens.iter().collect::<Vec<_>>())?;
        let mut degrees = Vec::with_capacity(gens.len());
        for f in gens {
            if f.is_zero() {
                return Err(Error::ZeroForm);
            }
            match f.homogeneous_degree() {
                Some(0) => {
                    return Err(Error::NotRegularSequence {
                        degree: 0,
                        detail: "a generator is a nonzero constant".into(),
                    })
                }
                Some(e) => degrees.push(e),
                None => return Err(Error::NotHomogeneous),
            }
        }
        if gens.len() != n {
            return Err(Error::NotRegularSequence {
                degree: 0,
                detail: format!("{} forms in {} variables", gens.len(), n),
            });
        }
        let top: usize = degrees.iter().map(|e| e - 1).sum();
        let expected = expected_hilbert(&degrees);
        let products = |i: usize| -> Vec<Vec<Scalar>> {
            let monos = monomial_basis(n, i);
            let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(k, m)| (m, k)).collect();
            let mut rows = Vec::new();
            for (f, &e) in gens.iter().zip(&degrees) {
                if e > i {
                    continue;
                }
                for m in monomial_basis(n, i - e) {
                    let mut v = vec![field.zero(); monos.len()];
                    for (t, c) in f.terms() {
                        v[index[&t.mul(&m)]] = c.clone();
                    }
                    rows.push(v);
                }
            }
            rows
        };
        let mut pieces = Vec::with_capacity(top + 1);
        let mut hilbert = Vec::with_capacity(top + 1);
        for i in 0..=top {
            let piece = Piece::new(n, field, i, products(i));
            if piece.dim() != expected[i] {
                return Err(Error::NotRegularSequence {
                    degree: i,
                    detail: format!("h_{i} = {}, expected {}", piece.dim(), expected[i]),
                });
            }
            hilbert.push(piece.dim());
            pieces.push(piece);
        }
        let beyond = top + 1;
        let full = binomial(n + beyond - 1, beyond);
        let rows = products(beyond);
        let rank = if rows.is_empty() {
            0
        } else {
            let m = Matrix::from_rows(field, rows).expect("rectangular");
            let cheap = match field {
                FieldSpec::Rational => modular_rank(&m, CERTIFICATE_PRIME),
                FieldSpec::Prime(_) => m.rank(),
            };
            if cheap == full {
                cheap
            } else {
                m.rank()
            }
        };
        if rank != full {
            return Err(Error::NotRegularSequence {
                degree: beyond,
                detail: format!("h_{beyond} = {}, expected 0", full - rank),
            });
        }
        Ok(GradedAlgebra {
            n_vars: n,
            field,
            presentation: Presentation::RegularSequence {
                generators: gens.to_vec(),
            },
            socle_degree: top,
            hilbert,
            pieces,
            letter: 'x',
            socle_scale: field.one(),
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn socle_degree(&self) -> usize {
        self.socle_degree
    }

    pub fn hilbert(&self) -> &[usize] {
        &self.hilbert
    }

    /// `dim R^i`, zero above the socle degree.
    pub fn dim(&self, i: usize) -> usize {
        self.hilbert.get(i).copied().unwrap_or(0)
    }

    /// Variable letter used when printing representatives.
    pub fn letter(&self) -> char {
        self.letter
    }

    pub fn basis(&self, i: usize) -> Vec<Monomial> {
        match self.pieces.get(i) {
            Some(p) => p.basis.iter().map(|&j| p.monomials[j].clone()).collect(),
            None => Vec::new(),
        }
    }

    pub fn basis_elements(&self, i: usize) -> Vec<AlgebraElement> {
        let h = self.dim(i);
        (0..h)
            .map(|k| {
                let mut coords = vec![self.field.zero(); h];
                coords[k] = self.field.one();
                AlgebraElement { degree: i, coords }
            })
            .collect()
    }

    pub fn zero(&self, i: usize) -> AlgebraElement {
        AlgebraElement {
            degree: i,
            coords: vec![self.field.zero(); self.dim(i)],
        }
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement {
            degree: 0,
            coords: vec![self.field.one()],
        }
    }

    pub fn element(&self, degree: usize, coords: Vec<Scalar>) -> Result<AlgebraElement> {
        let e = AlgebraElement { degree, coords };
        self.check_element(&e)?;
        Ok(e)
    }

    fn check_element(&self, e: &AlgebraElement) -> Result<()> {
        if e.coords.len() != self.dim(e.degree) {
            return Err(Error::DimensionMismatch {
                expected: self.dim(e.degree),
                found: e.coords.len(),
            });
        }
        if e.coords.iter().any(|s| s.field() != self.field) {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    fn check_poly(&self, p: &Polynomial) -> Result<()> {
        if p.field() != self.field {
            return Err(Error::MixedFields);
        }
        if p.n_vars() != self.n_vars {
            return Err(Error::VariableCount {
                expected: self.n_vars,
                found: p.n_vars(),
            });
        }
        Ok(())
    }

    /// Class of a nonzero homogeneous polynomial of degree at most `N`.
    pub fn reduce(&self, p: &Polynomial) -> Result<AlgebraElement> {
        let i = p.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        self.reduce_in_degree(p, i)
    }

    /// Class of `p` viewed in degree `i`; `p` may be zero.
    pub fn reduce_in_degree(&self, p: &Polynomial, i: usize) -> Result<AlgebraElement> {
        self.check_poly(p)?;
        if !p.is_zero() && p.homogeneous_degree() != Some(i) {
            return Err(Error::NotHomogeneous);
        }
        if i > self.socle_degree {
            return Err(Error::DegreeOutOfRange {
                degree: i,
                max: self.socle_degree,
            });
        }
        Ok(self.reduce_unchecked(p, i))
    }

    fn reduce_unchecked(&self, p: &Polynomial, i: usize) -> AlgebraElement {
        match self.pieces.get(i) {
            Some(piece) => AlgebraElement {
                degree: i,
                coords: piece.reduce_vector(piece.vector_of(p)),
            },
            None => self.zero(i),
        }
    }

    /// Class of `Σ c_i v_i` in `R^1`, where `v_i` are the variables.
    pub fn linear_element(&self, coeffs: &[Scalar]) -> Result<AlgebraElement> {
        if coeffs.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                found: coeffs.len(),
            });
        }
        let l = Polynomial::linear(self.field, coeffs);
        self.reduce_in_degree(&l, 1)
    }

    /// The representative on the basis monomials.
    pub fn representative(&self, e: &AlgebraElement) -> Polynomial {
        let basis = self.basis(e.degree);
        Polynomial::from_terms(self.n_vars, self.field, basis.into_iter().zip(e.coords.iter().cloned()))
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    fn mul_unchecked(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let degree = a.degree + b.degree;
        if degree > self.socle_degree || a.is_zero() || b.is_zero() {
            return self.zero(degree);
        }
        let product = &self.representative(a) * &self.representative(b);
        self.reduce_unchecked(&product, degree)
    }

    pub fn power(&self, x: &AlgebraElement, k: usize) -> Result<AlgebraElement> {
        self.check_element(x)?;
        if x.degree * k > self.socle_degree {
            return Err(Error::DegreeOutOfRange {
                degree: x.degree * k,
                max: self.socle_degree,
            });
        }
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul_unchecked(&acc, x);
        }
        Ok(acc)
    }

    /// Matrix of `μ_i(α): R^i → R^{i+c}`; column `j` is `α·e_j`.
    pub fn mul_map(&self, alpha: &AlgebraElement, i: usize) -> Result<Matrix> {
        self.check_element(alpha)?;
        if i + alpha.degree > self.socle_degree {
            return Err(Error::DegreeOutOfRange {
                degree: i + alpha.degree,
                max: self.socle_degree,
            });
        }
        Ok(self.mul_map_unchecked(alpha, i))
    }

    fn mul_map_unchecked(&self, alpha: &AlgebraElement, i: usize) -> Matrix {
        let target = i + alpha.degree;
        let columns: Vec<Vec<Scalar>> = self
            .basis_elements(i)
            .iter()
            .map(|e| self.mul_unchecked(alpha, e).coords)
            .collect();
        let m = Matrix::from_columns(self.field, self.dim(target), &columns).expect("consistent dimensions");
        if target <= self.socle_degree {
            m.with_labels(self.basis(target), self.basis(i)).expect("labels match")
        } else {
            m
        }
    }

    /// Rescales the socle functional so that the class of `rep` has value 1.
    pub fn pin_socle(&mut self, rep: &Polynomial) -> Result<()> {
        let e = self.reduce_in_degree(rep, self.socle_degree)?;
        let c = e.coords.first().cloned().ok_or(Error::ZeroElement)?;
        self.socle_scale = c.inv().ok_or(Error::ZeroElement)?;
        Ok(())
    }

    /// The isomorphism `R^N ≅ K`.
    pub fn socle_value(&self, e: &AlgebraElement) -> Result<Scalar> {
        self.check_element(e)?;
        if e.degree != self.socle_degree {
            return Err(Error::Precondition(format!(
                "socle value of a degree-{} element (socle degree {})",
                e.degree, self.socle_degree
            )));
        }
        Ok(&e.coords[0] * &self.socle_scale)
    }

    /// `[σ(a_i·b_j)]` for complementary-degree families.
    pub fn pairing_matrix(&self, left: &[AlgebraElement], right: &[AlgebraElement]) -> Result<Matrix> {
        let mut m = Matrix::zeros(left.len(), right.len(), self.field);
        for (i, a) in left.iter().enumerate() {
            for (j, b) in right.iter().enumerate() {
                if a.degree + b.degree != self.socle_degree {
                    return Err(Error::Precondition(format!(
                        "pairing degrees {} + {} differ from the socle degree {}",
                        a.degree, b.degree, self.socle_degree
                    )));
                }
                m.set(i, j, self.socle_value(&self.mul(a, b)?)?);
            }
        }
        Ok(m)
    }

    pub fn pairing_check(&self, s: usize) -> Result<Pairing> {
        if s > self.socle_degree {
            return Err(Error::DegreeOutOfRange {
                degree: s,
                max: self.socle_degree,
            });
        }
        let matrix = self.pairing_matrix(
            &self.basis_elements(s),
            &self.basis_elements(self.socle_degree - s),
        )?;
        let perfect = matrix.rows() == matrix.cols() && matrix.rank() == matrix.rows();
        Ok(Pairing { s, perfect, matrix })
    }

    pub fn hilbert_symmetric(&self) -> bool {
        let h = &self.hilbert;
        (0..h.len()).all(|i| h[i] == h[h.len() - 1 - i])
    }

    /// `R^1 · R^i` spans `R^{i+1}` for every `i < N`.
    pub fn is_standard(&self) -> bool {
        let ones = self.basis_elements(1);
        (0..self.socle_degree).all(|i| {
            let products: Vec<Vec<Scalar>> = ones
                .iter()
                .flat_map(|x| self.basis_elements(i).into_iter().map(move |e| (x.clone(), e)))
                .map(|(x, e)| self.mul_unchecked(&x, &e).coords)
                .collect();
            let h = self.dim(i + 1);
            if products.is_empty() {
                return h == 0;
            }
            Matrix::from_rows(self.field, products).is_ok_and(|m| m.rank() == h)
        })
    }

    /// `R / (0:α)`. Its socle sits in the top degree with a nonzero piece.
    pub fn quotient_by_ann(&self, alpha: &AlgebraElement) -> Result<GradedAlgebra> {
        self.check_element(alpha)?;
        if alpha.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut pieces = Vec::new();
        let mut hilbert = Vec::new();
        for i in 0..=self.socle_degree {
            let piece = &self.pieces[i];
            let kernel = if i + alpha.degree > self.socle_degree {
                self.basis_elements(i).into_iter().map(|e| e.coords).collect()
            } else {
                rank_kernel(&self.mul_map_unchecked(alpha, i)).kernel_basis
            };
            let mut rows = piece.ideal_rows(self.field);
            for v in &kernel {
                let mut lift = vec![self.field.zero(); piece.monomials.len()];
                for (&j, c) in piece.basis.iter().zip(v) {
                    lift[j] = c.clone();
                }
                rows.push(lift);
            }
            let new_piece = Piece::new(self.n_vars, self.field, i, rows);
            debug_assert_eq!(new_piece.ideal_dim(), piece.ideal_dim() + kernel.len());
            hilbert.push(new_piece.dim());
            pieces.push(new_piece);
        }
        let top = hilbert.iter().rposition(|&h| h > 0).unwrap_or(0);
        hilbert.truncate(top + 1);
        pieces.truncate(top + 1);
        Ok(GradedAlgebra {
            n_vars: self.n_vars,
            field: self.field,
            presentation: Presentation::Quotient {
                parent: Box::new(self.presentation.clone()),
                alpha: self.representative(alpha),
            },
            socle_degree: top,
            hilbert,
            pieces,
            letter: self.letter,
            socle_scale: self.field.one(),
        })
    }
}

impl Serialize for GradedAlgebra {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            n_vars: usize,
            field: FieldSpec,
            presentation: &'a Presentation,
            socle_degree: usize,
            hilbert: &'a [usize],
            bases: Vec<Vec<Monomial>>,
        }
        View {
            n_vars: self.n_vars,
            field: self.field,
            presentation: &self.presentation,
            socle_degree: self.socle_degree,
            hilbert: &self.hilbert,
            bases: (0..=self.socle_degree).map(|i| self.basis(i)).collect(),
        }
        .serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;
    use crate::rng::{random_nonzero_vector, trial_rng};
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rational;
    const PERAZZO: &str = "x0*x3^2 + 2*x1*x3*x4 + x2*x4^2";

    fn p(s: &str, n: usize) -> Polynomial {
        parse_poly(s, n, Q).unwrap()
    }

    fn gens(list: &str, n: usize) -> Vec<Polynomial> {
        list.split(';').map(|s| p(s, n)).collect()
    }

    fn monomial_ci() -> GradedAlgebra {
        GradedAlgebra::from_regular_sequence(&gens("x0^2;x1^2;x2^2;x3^2;x4^2", 5)).unwrap()
    }

    fn perazzo() -> GradedAlgebra {
        GradedAlgebra::from_inverse_system(&p(PERAZZO, 5)).unwrap()
    }

    #[test]
    fn hilbert_series_expansion() {
        assert_eq!(expected_hilbert(&[2; 5]), [1, 5, 10, 10, 5, 1]);
        assert_eq!(expected_hilbert(&[3, 3, 2]), [1, 3, 5, 5, 3, 1]);
        assert_eq!(expected_hilbert(&[]), [1]);
    }

    #[test]
    fn inverse_system_hilbert_functions() {
        let a = perazzo();
        assert_eq!(a.hilbert(), [1, 5, 5, 1]);
        assert_eq!(a.socle_degree(), 3);
        let b = GradedAlgebra::from_inverse_system(&p("x0^4", 1)).unwrap();
        assert_eq!(b.hilbert(), [1, 1, 1, 1, 1]);
        let c = GradedAlgebra::from_inverse_system(&p("x0*x1", 2)).unwrap();
        assert_eq!(c.hilbert(), [1, 2, 1]);
        assert!(matches!(
            GradedAlgebra::from_inverse_system(&p("0", 2)),
            Err(Error::ZeroForm)
        ));
    }

    #[test]
    fn perazzo_bases() {
        let a = perazzo();
        let b2: Vec<String> = a.basis(2).iter().map(|m| m.fmt_with('y')).collect();
        assert_eq!(b2, ["y1*y4", "y2*y4", "y3^2", "y3*y4", "y4^2"]);
        assert_eq!(a.basis(3)[0].fmt_with('y'), "y2*y4^2");
    }

    #[test]
    fn regular_sequences() {
        let a = monomial_ci();
        assert_eq!(a.hilbert(), [1, 5, 10, 10, 5, 1]);
        assert_eq!(a.socle_degree(), 5);
        let fermat = GradedAlgebra::from_regular_sequence(&gens("3x0^2;3x1^2;3x2^2;3x3^2", 4)).unwrap();
        assert_eq!(fermat.hilbert(), [1, 4, 6, 4, 1]);
        assert!(matches!(
            GradedAlgebra::from_regular_sequence(&gens("x0^2;x0*x1;x1^2;x2^2;x3^2", 5)),
            Err(Error::NotRegularSequence { .. })
        ));
        // Matches the expected Hilbert function up to the socle degree and
        // fails only one degree higher.
        assert!(matches!(
            GradedAlgebra::from_regular_sequence(&gens("x0*x1;x0^2 + x0*x1", 2)),
            Err(Error::NotRegularSequence { degree: 3, .. })
        ));
        let mixed = GradedAlgebra::from_regular_sequence(&gens("x0^3;x1^3;x2^2", 3)).unwrap();
        assert_eq!(mixed.hilbert(), [1, 3, 5, 5, 3, 1]);
    }

    #[test]
    fn prime_field_regular_sequence() {
        let f = FieldSpec::Prime(101);
        let g: Vec<Polynomial> = "x0^2;x1^2;x2^2"
            .split(';')
            .map(|s| parse_poly(s, 3, f).unwrap())
            .collect();
        let a = GradedAlgebra::from_regular_sequence(&g).unwrap();
        assert_eq!(a.hilbert(), [1, 3, 3, 1]);
    }

    #[test]
    fn reduction() {
        let a = monomial_ci();
        for f in gens("x0^2;x1^2;x2^2;x3^2;x4^2", 5) {
            assert!(a.reduce(&f).unwrap().is_zero());
        }
        let b = perazzo();
        let s1 = b.reduce(&p("y0*y3^2", 5)).unwrap();
        assert!(!s1.is_zero());
        assert_eq!(b.reduce(&p("y1*y3*y4", 5)).unwrap(), s1);
        assert_eq!(b.reduce(&p("y2*y4^2", 5)).unwrap(), s1);
        assert!(b.reduce(&p("y0*y1*y2", 5)).unwrap().is_zero());
        assert!(matches!(
            b.reduce(&p("y0^4", 5)),
            Err(Error::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn powers() {
        let a = monomial_ci();
        let x0 = a.reduce(&p("x0", 5)).unwrap();
        assert_eq!(a.power(&x0, 0).unwrap(), a.one());
        let l = a.reduce(&p("x0 + x1", 5)).unwrap();
        assert_eq!(a.power(&l, 2).unwrap(), a.reduce(&p("2*x0*x1", 5)).unwrap());
        assert!(a.power(&l, 6).is_err());
        let b = perazzo();
        assert!(b.power(&b.reduce(&p("y0", 5)).unwrap(), 2).unwrap().is_zero());
    }

    #[test]
    fn multiplication_maps() {
        let a = monomial_ci();
        let x0 = a.reduce(&p("x0", 5)).unwrap();
        assert_eq!(a.mul_map(&x0, 1).unwrap().rank(), 4);
        assert!(a.mul_map(&a.zero(1), 2).unwrap().is_zero());
        assert!(matches!(
            a.mul_map(&x0, 5),
            Err(Error::DegreeOutOfRange { .. })
        ));
        let b = perazzo();
        let mut rng = trial_rng(5, 0);
        for _ in 0..10 {
            let x = b.element(1, random_nonzero_vector(Q, 5, &mut rng, 10)).unwrap();
            assert!(b.mul_map(&x, 1).unwrap().rank() <= 4);
        }
    }

    #[test]
    fn pairings() {
        let a = monomial_ci();
        for s in 0..=5 {
            assert!(a.pairing_check(s).unwrap().perfect);
        }
        let m = a.pairing_check(1).unwrap().matrix;
        for i in 0..5 {
            let row: Vec<i64> = (0..5).map(|j| m.get(i, j).to_i64().unwrap()).collect();
            assert_eq!(row.iter().sum::<i64>(), 1);
            assert!(row.iter().all(|&v| v == 0 || v == 1));
        }
        let z = a.pairing_check(0).unwrap().matrix;
        assert_eq!((z.rows(), z.cols()), (1, 1));
        assert!(z.get(0, 0).is_one());
        assert!(a.is_standard());
        assert!(perazzo().is_standard());
    }

    #[test]
    fn quotients() {
        let a = monomial_ci();
        let q = a.quotient_by_ann(&a.reduce(&p("x0", 5)).unwrap()).unwrap();
        assert_eq!(q.hilbert(), [1, 4, 6, 4, 1]);
        assert_eq!(q.socle_degree(), 4);
        for s in 0..=4 {
            assert!(q.pairing_check(s).unwrap().perfect);
        }
        let sigma = a.reduce(&p("x0*x1*x2*x3*x4", 5)).unwrap();
        let k = a.quotient_by_ann(&sigma).unwrap();
        assert_eq!(k.hilbert(), [1]);
        assert_eq!(k.socle_degree(), 0);
        assert!(matches!(a.quotient_by_ann(&a.zero(2)), Err(Error::ZeroElement)));

        let b = perazzo();
        let x = b.linear_element(&[3, -1, 4, 1, -5].map(|v| Q.from_i64(v))).unwrap();
        let r = b.quotient_by_ann(&x).unwrap();
        assert_eq!(r.socle_degree(), 2);
        assert!(r.hilbert_symmetric());
        for s in 0..=2 {
            assert!(r.pairing_check(s).unwrap().perfect);
        }
    }

    #[test]
    fn pinned_socle() {
        let mut b = perazzo();
        b.pin_socle(&p("y0*y3^2", 5)).unwrap();
        let s = b.reduce(&p("y1*y3*y4", 5)).unwrap();
        assert!(b.socle_value(&s).unwrap().is_one());
    }

    #[test]
    fn serializes_bases() {
        let a = GradedAlgebra::from_inverse_system(&p("x0*x1", 2)).unwrap();
        let json = serde_json::to_value(&a).unwrap();
        assert_eq!(json["hilbert"], serde_json::json!([1, 2, 1]));
        assert_eq!(json["presentation"]["kind"], "inverse_system");
        assert_eq!(json["bases"][2], serde_json::json!([[1, 1]]));
    }

    fn arb_form() -> impl Strategy<Value = Polynomial> {
        (2usize..5, 2usize..5).prop_flat_map(|(n, d)| {
            let monos = monomial_basis(n, d);
            prop::collection::vec(-3i64..4, monos.len()).prop_map(move |cs| {
                Polynomial::from_terms(n, Q, monos.iter().cloned().zip(cs.iter().map(|&c| Q.from_i64(c))))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn inverse_system_structure(g in arb_form()) {
            prop_assume!(!g.is_zero());
            let a = GradedAlgebra::from_inverse_system(&g).unwrap();
            let d = a.socle_degree();
            prop_assert_eq!(a.hilbert()[0], 1);
            prop_assert_eq!(a.hilbert()[d], 1);
            prop_assert!(a.hilbert_symmetric());
            prop_assert!(a.is_standard());
            for s in 0..=d {
                prop_assert!(a.pairing_check(s).unwrap().perfect);
                prop_assert_eq!(a.dim(s), catalecticant(&g, s).unwrap().rank());
            }
        }

        #[test]
        fn reduction_is_a_projection(g in arb_form(), seed in any::<u64>()) {
            prop_assume!(!g.is_zero());
            let a = GradedAlgebra::from_inverse_system(&g).unwrap();
            let mut rng = trial_rng(seed, 0);
            for i in 0..=a.socle_degree() {
                if a.dim(i) == 0 { continue; }
                let e = a.element(i, random_nonzero_vector(Q, a.dim(i), &mut rng, 5)).unwrap();
                let back = a.reduce_in_degree(&a.representative(&e), i).unwrap();
                prop_assert_eq!(back, e);
            }
        }

        #[test]
        fn mul_map_is_linear_in_alpha(seed in any::<u64>(), s in -3i64..4, t in -3i64..4) {
            let a = monomial_ci();
            let mut rng = trial_rng(seed, 1);
            let al = a.element(2, random_nonzero_vector(Q, 10, &mut rng, 4)).unwrap();
            let be = a.element(2, random_nonzero_vector(Q, 10, &mut rng, 4)).unwrap();
            let (s, t) = (Q.from_i64(s), Q.from_i64(t));
            let combo = al.scale(&s).add(&be.scale(&t)).unwrap();
            let lhs = a.mul_map(&combo, 1).unwrap();
            let rhs = a.mul_map(&al, 1).unwrap().scale(&s).add(&a.mul_map(&be, 1).unwrap().scale(&t)).unwrap();
            prop_assert_eq!(lhs.rows(), rhs.rows());
            for i in 0..lhs.rows() {
                prop_assert_eq!(lhs.row(i), rhs.row(i));
            }
        }
    }
}
