//! Endomorphism algebras: structure constants, Jacobson radical, and the local test.

use crate::field::Field;
use crate::matrix::Matrix;

use super::{complement, QuiverRep, RepError, RepMorphism};

/// `End(M)` with a fixed basis and structure constants.
#[derive(Clone, Debug)]
pub struct EndoAlgebra<F: Field> {
    field: F,
    basis: Vec<RepMorphism<F>>,
    /// Rows of the flattened basis used to read off coordinates.
    pivot_rows: Vec<usize>,
    pivot_inverse: Matrix<F>,
    /// `products[i][j]` = coordinates of `basis[i] . basis[j]` (apply `j` first).
    products: Vec<Vec<Vec<F::Elem>>>,
    identity: Vec<F::Elem>,
}

impl<F: Field> EndoAlgebra<F> {
    pub fn new(m: &QuiverRep<F>) -> Self {
        Self::from_basis(m.field(), m.hom_basis(m), &m.identity())
    }

    fn from_basis(field: &F, basis: Vec<RepMorphism<F>>, id: &RepMorphism<F>) -> Self {
        let n = basis.len();
        let cols: Vec<Vec<F::Elem>> = basis.iter().map(|b| b.flatten()).collect();
        let len = cols.first().map_or(0, |c| c.len());
        let stacked = Matrix::from_columns(field, len, &cols);
        let pivot_rows = stacked.transpose().pivot_columns();
        let all: Vec<usize> = (0..n).collect();
        let pivot_inverse = stacked
            .select(&pivot_rows, &all)
            .inverse()
            .expect("hom basis is linearly independent");
        let mut alg = EndoAlgebra {
            field: field.clone(),
            basis,
            pivot_rows,
            pivot_inverse,
            products: Vec::new(),
            identity: Vec::new(),
        };
        alg.identity = alg.coords(id);
        alg.products = (0..n)
            .map(|i| (0..n).map(|j| alg.coords(&alg.basis[j].then(&alg.basis[i]))).collect())
            .collect();
        alg
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RepMorphism<F>] {
        &self.basis
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Coordinates of an endomorphism in the basis.
    pub fn coords(&self, phi: &RepMorphism<F>) -> Vec<F::Elem> {
        let flat = phi.flatten();
        let picked: Vec<F::Elem> = self.pivot_rows.iter().map(|&r| flat[r].clone()).collect();
        self.pivot_inverse.apply(&picked)
    }

    pub fn element(&self, x: &[F::Elem]) -> RepMorphism<F> {
        let f = &self.field;
        let mut acc: Option<RepMorphism<F>> = None;
        for (c, b) in x.iter().zip(&self.basis) {
            if f.is_zero(c) {
                continue;
            }
            let t = b.scale(c);
            acc = Some(match acc {
                Some(a) => a.add(&t),
                None => t,
            });
        }
        acc.unwrap_or_else(|| self.basis[0].scale(&f.zero()))
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (o, p) in out.iter_mut().zip(&self.products[i][j]) {
                    *o = f.add(o, &f.mul(&c, p));
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<F::Elem> {
        let mut e = vec![self.field.zero(); self.dim()];
        e[i] = self.field.one();
        e
    }

    /// Basis (as coordinate vectors) of the Jacobson radical.
    pub fn radical(&self, m: &QuiverRep<F>) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let n = self.dim();
        let mut current: Vec<Vec<F::Elem>> = (0..n).map(|i| self.unit(i)).collect();
        let Some(p) = Some(f.characteristic()).filter(|&p| p > 0) else {
            // Characteristic zero: the trace form of a faithful module.
            let traces: Vec<F::Elem> = self.basis.iter().map(|b| rep_trace(f, b)).collect();
            let form = Matrix::from_rows(
                f,
                (0..n)
                    .map(|y| (0..n).map(|k| dot(f, &self.products[k][y], &traces)).collect())
                    .collect(),
                n,
            );
            return form.rank_kernel().kernel_basis;
        };
        // Iterated trace forms on integer lifts in small characteristic.
        let total = m.total_dim().max(1) as u128;
        let p = p as u128;
        let mut levels = 0u32;
        while p.pow(levels + 1) <= total {
            levels += 1;
        }
        for i in 0..=levels {
            if current.is_empty() {
                break;
            }
            let modulus = p.pow(i + 1);
            let exp = p.pow(i);
            let mut rows = Vec::with_capacity(n);
            for y in 0..n {
                let ey = self.unit(y);
                let row: Vec<F::Elem> = current
                    .iter()
                    .map(|x| {
                        let z = self.element(&self.mul(x, &ey));
                        let t = lifted_power_trace(f, &z, exp, modulus);
                        f.from_i64(((t / exp) % p) as i64)
                    })
                    .collect();
                rows.push(row);
            }
            let sys = Matrix::from_rows(f, rows, current.len());
            let combos = sys.rank_kernel().kernel_basis;
            current = combos
                .iter()
                .map(|c| {
                    let mut v = vec![f.zero(); n];
                    for (ck, xk) in c.iter().zip(&current) {
                        for (o, x) in v.iter_mut().zip(xk) {
                            *o = f.add(o, &f.mul(ck, x));
                        }
                    }
                    v
                })
                .collect();
        }
        current
    }
}

fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
}

fn rep_trace<F: Field>(f: &F, phi: &RepMorphism<F>) -> F::Elem {
    phi.maps().iter().fold(f.zero(), |acc, m| f.add(&acc, &m.trace()))
}

/// Trace of `z^exp` computed on integer lifts modulo `modulus`.
fn lifted_power_trace<F: Field>(f: &F, z: &RepMorphism<F>, exp: u128, modulus: u128) -> u128 {
    let mut total = 0u128;
    for m in z.maps() {
        let n = m.rows();
        if n == 0 {
            continue;
        }
        let lift: Vec<u128> = m.data().iter().map(|e| f.residue(e).expect("prime field") as u128).collect();
        let pw = int_matrix_pow(&lift, n, exp, modulus);
        total = (total + (0..n).map(|i| pw[i * n + i]).sum::<u128>()) % modulus;
    }
    total
}

fn int_matrix_mul(a: &[u128], b: &[u128], n: usize, modulus: u128) -> Vec<u128> {
    let mut out = vec![0u128; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + aik * b[k * n + j]) % modulus;
            }
        }
    }
    out
}

fn int_matrix_pow(a: &[u128], n: usize, mut e: u128, modulus: u128) -> Vec<u128> {
    let mut result: Vec<u128> = (0..n * n).map(|k| u128::from(k % (n + 1) == 0) % modulus).collect();
    let mut base: Vec<u128> = a.iter().map(|x| x % modulus).collect();
    while e > 0 {
        if e & 1 == 1 {
            result = int_matrix_mul(&result, &base, n, modulus);
        }
        e >>= 1;
        if e > 0 {
            base = int_matrix_mul(&base, &base, n, modulus);
        }
    }
    result
}

/// Basis of `rad End(M)` as endomorphisms.
pub fn endomorphism_radical<F: Field>(m: &QuiverRep<F>) -> Vec<RepMorphism<F>> {
    let alg = EndoAlgebra::new(m);
    alg.radical(m).iter().map(|x| alg.element(x)).collect()
}

/// True iff `End(M)` is local.
pub fn is_indecomposable<F: Field>(m: &QuiverRep<F>) -> Result<bool, RepError> {
    if m.is_zero() {
        return Err(RepError::ZeroRep);
    }
    let alg = EndoAlgebra::new(m);
    if alg.dim() == 1 {
        return Ok(true);
    }
    let f = m.field();
    let total = m.total_dim();
    // Fitting: a non-nilpotent non-invertible endomorphism splits off a summand.
    for phi in alg.basis() {
        let rank: usize = phi.maps().iter().map(|a| a.pow(total as u64).rank()).sum();
        if rank > 0 && rank < total {
            return Ok(false);
        }
    }
    let rad = alg.radical(m);
    let n = alg.dim();
    let top = n - rad.len();
    if top == 1 {
        return Ok(true);
    }
    let quotient = Quotient::new(&alg, &rad);
    let Some(p) = Some(f.characteristic()).filter(|&p| p > 0) else {
        return Err(RepError::NotSplit(top));
    };
    // A finite division ring is a field, and a commutative semisimple algebra
    // over F_p is a field iff its Frobenius-fixed subspace is the prime field.
    if !quotient.is_commutative() {
        return Ok(false);
    }
    let frob_minus_id = Matrix::from_columns(
        f,
        top,
        &(0..top)
            .map(|i| {
                let e = quotient.unit(i);
                let fp = quotient.pow(&e, p);
                fp.iter().zip(&e).map(|(a, b)| f.sub(a, b)).collect()
            })
            .collect::<Vec<_>>(),
    );
    Ok(top - frob_minus_id.rank() == 1)
}

/// `End(M) / rad` with coordinates on a complement of the radical.
struct Quotient<'a, F: Field> {
    alg: &'a EndoAlgebra<F>,
    proj: Matrix<F>,
    lift: Matrix<F>,
}

impl<'a, F: Field> Quotient<'a, F> {
    fn new(alg: &'a EndoAlgebra<F>, rad: &[Vec<F::Elem>]) -> Self {
        let f = alg.field();
        let n = alg.dim();
        let rad_basis = Matrix::from_columns(f, n, rad);
        let (proj, lift) = complement(f, n, &rad_basis);
        Quotient { alg, proj, lift }
    }

    fn dim(&self) -> usize {
        self.proj.rows()
    }

    fn unit(&self, i: usize) -> Vec<F::Elem> {
        let f = self.alg.field();
        let mut e = vec![f.zero(); self.dim()];
        e[i] = f.one();
        e
    }

    fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let prod = self.alg.mul(&self.lift.apply(x), &self.lift.apply(y));
        self.proj.apply(&prod)
    }

    fn one(&self) -> Vec<F::Elem> {
        self.proj.apply(&self.alg.identity)
    }

    fn pow(&self, x: &[F::Elem], mut e: u64) -> Vec<F::Elem> {
        let mut result = self.one();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (i + 1..d).all(|j| self.mul(&self.unit(i), &self.unit(j)) == self.mul(&self.unit(j), &self.unit(i))))
    }
}

/// Isomorphism test for two indecomposable representations: `M ≅ N` iff some
/// `g . f` with `f: M -> N`, `g: N -> M` from the Hom bases is invertible.
pub fn is_isomorphic<F: Field>(m: &QuiverRep<F>, n: &QuiverRep<F>) -> Result<bool, RepError> {
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let there = m.hom_basis(n);
    if there.is_empty() {
        return Ok(false);
    }
    if there.iter().any(|f| f.is_iso()) {
        return Ok(true);
    }
    let back = n.hom_basis(m);
    for f in &there {
        for g in &back {
            if f.then(g).is_iso() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
