//! Random test inputs: window representations, radical complexes and contractible padding.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{ProjModule, ProjMorphism, RszAlgebra};
use crate::complex::{ComplexError, ProjComplex};
use crate::cover::CoverWindow;
use crate::field::Field;
use crate::koszul::{koszul_rep, pushdown, GradedQuiver, KoszulError};
use crate::matrix::Matrix;
use crate::quiver::Quiver;
use crate::rep::{QuiverRep, RepError};

/// Entries are drawn from `-2..=2`.
pub fn random_matrix<F: Field, R: Rng>(field: &F, rows: usize, cols: usize, rng: &mut R) -> Matrix<F> {
    let data = (0..rows * cols).map(|_| field.from_i64(rng.gen_range(-2..=2))).collect();
    Matrix::from_data(field, rows, cols, data)
}

pub fn random_invertible<F: Field, R: Rng>(field: &F, n: usize, rng: &mut R) -> Matrix<F> {
    loop {
        let m = random_matrix(field, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

/// Dimensions in `0..=max_dim` on the allowed vertices, zero elsewhere.
pub fn random_rep<F: Field, R: Rng>(
    q: Arc<Quiver>,
    field: &F,
    allowed: &[bool],
    max_dim: usize,
    rng: &mut R,
) -> Result<QuiverRep<F>, RepError> {
    let dims: Vec<usize> = allowed.iter().map(|&ok| if ok { rng.gen_range(0..=max_dim) } else { 0 }).collect();
    let maps = q
        .arrows()
        .iter()
        .map(|a| random_matrix(field, dims[a.tgt], dims[a.src], rng))
        .collect();
    QuiverRep::from_parts(q, field, dims, maps)
}

/// Push-down of the Koszul image of a random window representation, shifted by `shift`.
///
/// The representation avoids the levels where the window is cut, so the result is perfect.
pub fn random_radical_complex<F: Field, R: Rng>(
    q: &Quiver,
    field: &F,
    max_dim: usize,
    shift: i64,
    rng: &mut R,
) -> Result<ProjComplex<F>, KoszulError> {
    let cw = CoverWindow::build(q, None, -2, 3)?;
    let g = GradedQuiver::from_window(&cw);
    let allowed: Vec<bool> = g.levels().iter().map(|&l| g.cut_above().is_none_or(|c| l < c)).collect();
    let m = random_rep(g.opposite().clone(), field, &allowed, max_dim, rng)?;
    let walg = g.algebra(field.clone());
    let base = RszAlgebra::new(q.clone(), field.clone());
    Ok(pushdown(&cw, &base, &koszul_rep(&g, &walg, &m)?)?.shift(shift))
}

/// `P --id--> P` in degrees `n`, `n + 1`.
pub fn contractible<F: Field>(alg: &RszAlgebra<F>, p: ProjModule, n: i64) -> ProjComplex<F> {
    let id = ProjMorphism::identity(alg.field(), &p);
    ProjComplex::new(alg.clone(), n, vec![p.clone(), p], vec![id], false).expect("identity cone is a complex")
}

/// Applies a random basis change at every degree and vertex.
pub fn scramble<F: Field, R: Rng>(c: &ProjComplex<F>, rng: &mut R) -> Result<ProjComplex<F>, ComplexError> {
    let mut out = c.clone();
    let Some((lo, hi)) = c.support_range() else {
        return Ok(out);
    };
    let f = c.algebra().field().clone();
    for n in lo..=hi {
        for (v, k) in c.term(n).iter() {
            let g = random_invertible(&f, k, rng);
            out.change_basis(n, v, &g)?;
        }
    }
    Ok(out)
}

/// Total dimension of all terms as representations.
pub fn total_dim<F: Field>(c: &ProjComplex<F>) -> usize {
    c.terms().iter().map(|t| t.dim(c.algebra())).sum()
}
