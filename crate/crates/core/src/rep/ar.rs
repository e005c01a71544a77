//! Almost split sequences over hereditary path algebras of acyclic quivers.

use std::sync::Arc;

use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::Quiver;

use super::{complement, endomorphism_radical, is_indecomposable, paths_between, QuiverRep, RepError, RepMorphism};

/// `0 -> left -> middle -> right -> 0`.
#[derive(Clone, Debug)]
pub struct ArSequence<F: Field> {
    pub left: QuiverRep<F>,
    pub middle: QuiverRep<F>,
    pub right: QuiverRep<F>,
    pub inclusion: RepMorphism<F>,
    pub projection: RepMorphism<F>,
}

/// A direct sum of indecomposable projectives `P_v`, one summand per entry of `tops`.
struct ProjSum<F: Field> {
    tops: Vec<usize>,
    rep: QuiverRep<F>,
    /// Offset of each summand inside the space at every vertex.
    offsets: Vec<Vec<usize>>,
}

impl<F: Field> ProjSum<F> {
    fn new(q: &Arc<Quiver>, field: &F, singles: &[QuiverRep<F>], tops: Vec<usize>) -> Self {
        let mut rep = QuiverRep::zero(q.clone(), field);
        let mut offsets = Vec::with_capacity(tops.len());
        for &t in &tops {
            offsets.push(rep.dims().to_vec());
            rep = rep.direct_sum(&singles[t]);
        }
        ProjSum { tops, rep, offsets }
    }
}

/// Map out of a sum of projectives determined by the images of the top generators.
fn map_from_generators<F: Field>(
    src: &ProjSum<F>,
    tgt: &QuiverRep<F>,
    paths: &PathTable,
    gens: &[Vec<F::Elem>],
) -> RepMorphism<F> {
    let f = tgt.field();
    let q = tgt.quiver();
    let mut maps: Vec<Matrix<F>> = (0..q.vertex_count())
        .map(|x| Matrix::zeros(f, tgt.dim(x), src.rep.dim(x)))
        .collect();
    for (s, (&a, g)) in src.tops.iter().zip(gens).enumerate() {
        for x in 0..q.vertex_count() {
            for (k, p) in paths.from_to(a, x).iter().enumerate() {
                let mut v = g.clone();
                for &arr in p {
                    v = tgt.map(arr).apply(&v);
                }
                let col = src.offsets[s][x] + k;
                for (i, e) in v.into_iter().enumerate() {
                    maps[x].set(i, col, e);
                }
            }
        }
    }
    RepMorphism::new(maps)
}

struct PathTable {
    table: std::collections::BTreeMap<(usize, usize), Vec<Vec<usize>>>,
}

impl PathTable {
    fn from_to(&self, a: usize, x: usize) -> &[Vec<usize>] {
        self.table.get(&(a, x)).map_or(&[], |v| v.as_slice())
    }
}

/// Projective cover of `m`: the cover, the epimorphism, and the chosen top generators.
fn projective_cover<F: Field>(
    m: &QuiverRep<F>,
    singles: &[QuiverRep<F>],
    paths: &PathTable,
) -> (ProjSum<F>, RepMorphism<F>) {
    let f = m.field();
    let q = m.quiver_arc().clone();
    let rad = m.radical_basis();
    let mut tops = Vec::new();
    let mut gens = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        let (_, lift) = complement(f, m.dim(v), r);
        for j in 0..lift.cols() {
            tops.push(v);
            gens.push(lift.column(j));
        }
    }
    let cover = ProjSum::new(&q, f, singles, tops);
    let pi = map_from_generators(&cover, m, paths, &gens);
    (cover, pi)
}

/// Nakayama functor on a map between sums of projectives: each path `p: a -> b`
/// component `P_b -> P_a` becomes `I_b -> I_a`, the transpose of `r |-> r p`.
fn nakayama<F: Field>(
    q: &Quiver,
    field: &F,
    src: &ProjSum<F>,
    tgt: &ProjSum<F>,
    inj: &[QuiverRep<F>],
    inj_offsets: (&[Vec<usize>], &[Vec<usize>]),
    fmap: &RepMorphism<F>,
    paths: &PathTable,
) -> RepMorphism<F> {
    let (src_off, tgt_off) = inj_offsets;
    let n = q.vertex_count();
    let src_dims: Vec<usize> = (0..n).map(|x| src.tops.iter().map(|&b| inj[b].dim(x)).sum()).collect();
    let tgt_dims: Vec<usize> = (0..n).map(|x| tgt.tops.iter().map(|&a| inj[a].dim(x)).sum()).collect();
    let mut maps: Vec<Matrix<F>> = (0..n).map(|x| Matrix::zeros(field, tgt_dims[x], src_dims[x])).collect();
    for (j, &b) in src.tops.iter().enumerate() {
        // Component of the generator of summand j in target summand i, at vertex b.
        let col = src.offsets[j][b];
        for (i, &a) in tgt.tops.iter().enumerate() {
            for (k, p) in paths.from_to(a, b).iter().enumerate() {
                let c = fmap.at(b).get(tgt.offsets[i][b] + k, col).clone();
                if field.is_zero(&c) {
                    continue;
                }
                for x in 0..n {
                    // I_b(x) basis: paths x -> b; I_a(x): paths x -> a.
                    for (si, s) in paths.from_to(x, b).iter().enumerate() {
                        if s.len() < p.len() || s[s.len() - p.len()..] != p[..] {
                            continue;
                        }
                        let r = &s[..s.len() - p.len()];
                        let ri = paths.from_to(x, a).iter().position(|t| t.as_slice() == r).expect("prefix path");
                        let (row, colx) = (tgt_off[i][x] + ri, src_off[j][x] + si);
                        let v = field.add(maps[x].get(row, colx), &c);
                        maps[x].set(row, colx, v);
                    }
                }
            }
        }
    }
    RepMorphism::new(maps)
}

fn inj_offsets<F: Field>(n: usize, tops: &[usize], inj: &[QuiverRep<F>]) -> Vec<Vec<usize>> {
    let mut acc = vec![0usize; n];
    let mut out = Vec::with_capacity(tops.len());
    for &t in tops {
        out.push(acc.clone());
        for (x, a) in acc.iter_mut().enumerate() {
            *a += inj[t].dim(x);
        }
    }
    out
}

/// Solves `target = Σ c_k basis_k` in flattened coordinates.
fn solve_in_span<F: Field>(field: &F, basis: &[RepMorphism<F>], target: &RepMorphism<F>) -> Option<Vec<F::Elem>> {
    let t = target.flatten();
    if basis.is_empty() {
        return t.iter().all(|e| field.is_zero(e)).then(Vec::new);
    }
    let cols: Vec<Vec<F::Elem>> = basis.iter().map(|b| b.flatten()).collect();
    let a = Matrix::from_columns(field, t.len(), &cols);
    let rhs = Matrix::from_columns(field, t.len(), &[t]);
    a.solve_all(&rhs).particular().map(|x| x.column(0))
}

fn combine<F: Field>(field: &F, basis: &[RepMorphism<F>], c: &[F::Elem], zero: RepMorphism<F>) -> RepMorphism<F> {
    basis.iter().zip(c).fold(zero, |acc, (b, ck)| if field.is_zero(ck) { acc } else { acc.add(&b.scale(ck)) })
}

/// The almost split sequence ending at an indecomposable non-projective `m`.
pub fn ar_sequence_ending_at<F: Field>(m: &QuiverRep<F>) -> Result<ArSequence<F>, RepError> {
    let q = m.quiver_arc().clone();
    let f = m.field().clone();
    let n = q.vertex_count();
    if m.is_zero() {
        return Err(RepError::ZeroRep);
    }
    let paths = PathTable { table: paths_between(&q)? };
    if !is_indecomposable(m)? {
        return Err(RepError::Decomposable);
    }
    let singles: Vec<QuiverRep<F>> = (0..n).map(|v| super::projective_at(q.clone(), &f, v)).collect::<Result<_, _>>()?;
    let injs: Vec<QuiverRep<F>> = (0..n).map(|v| super::injective_at(q.clone(), &f, v)).collect::<Result<_, _>>()?;

    let (p0, pi) = projective_cover(m, &singles, &paths);
    let (kernel, incl) = p0.rep.subrep(&pi.kernel_basis())?;
    if kernel.is_zero() {
        return Err(RepError::NotApplicable);
    }
    // The kernel is projective; its cover is an isomorphism onto it.
    let (p1, k_cover) = projective_cover(&kernel, &singles, &paths);
    let syz = k_cover.then(&incl);

    let off1 = inj_offsets(n, &p1.tops, &injs);
    let off0 = inj_offsets(n, &p0.tops, &injs);
    let nu = nakayama(&q, &f, &p1, &p0, &injs, (&off1, &off0), &syz, &paths);
    let nu_src = p1.tops.iter().fold(QuiverRep::zero(q.clone(), &f), |acc, &b| acc.direct_sum(&injs[b]));
    let nu_tgt = p0.tops.iter().fold(QuiverRep::zero(q.clone(), &f), |acc, &a| acc.direct_sum(&injs[a]));
    if !nu.is_homomorphism(&nu_src, &nu_tgt) {
        return Err(RepError::Internal("Nakayama image is not a homomorphism".into()));
    }
    let (left, _) = nu_src.subrep(&nu.kernel_basis())?;

    // Ext^1(m, left) = Hom(P1, left) / (Hom(P0, left) . syz).
    let hom1 = p1.rep.hom_basis(&left);
    let hom0 = p0.rep.hom_basis(&left);
    let dim1 = hom1.len();
    let boundary: Vec<Vec<F::Elem>> = hom0
        .iter()
        .map(|g| solve_in_span(&f, &hom1, &syz.then(g)).expect("composite lies in Hom(P1, L)"))
        .collect();
    let boundary_span = Matrix::from_columns(&f, dim1, &boundary).image();
    let (ext_proj, ext_lift) = complement(&f, dim1, &boundary_span);
    let ext_dim = ext_proj.rows();
    if ext_dim == 0 {
        return Err(RepError::Internal("Ext^1(m, tau m) vanishes".into()));
    }

    // Socle of Ext^1 under the action of rad End(m).
    let p0_end = p0.rep.hom_basis(&p0.rep);
    let p1_end = p1.rep.hom_basis(&p1.rep);
    let mut conditions = Matrix::zeros(&f, 0, ext_dim);
    for psi in endomorphism_radical(m) {
        let c0 = solve_in_span(
            &f,
            &p0_end.iter().map(|b| b.then(&pi)).collect::<Vec<_>>(),
            &pi.then(&psi),
        )
        .ok_or_else(|| RepError::Internal("endomorphism does not lift to P0".into()))?;
        let psi0 = combine(&f, &p0_end, &c0, p0.rep.zero_morphism_to(&p0.rep));
        let c1 = solve_in_span(
            &f,
            &p1_end.iter().map(|b| b.then(&syz)).collect::<Vec<_>>(),
            &syz.then(&psi0),
        )
        .ok_or_else(|| RepError::Internal("endomorphism does not lift to P1".into()))?;
        let psi1 = combine(&f, &p1_end, &c1, p1.rep.zero_morphism_to(&p1.rep));
        let action_cols: Vec<Vec<F::Elem>> = (0..ext_dim)
            .map(|e| {
                let h = combine(&f, &hom1, &ext_lift.column(e), p1.rep.zero_morphism_to(&left));
                let moved = solve_in_span(&f, &hom1, &psi1.then(&h)).expect("pullback lies in Hom(P1, L)");
                ext_proj.apply(&moved)
            })
            .collect();
        conditions = conditions.vstack(&Matrix::from_columns(&f, ext_dim, &action_cols));
    }
    let socle = conditions.kernel();
    if socle.cols() == 0 {
        return Err(RepError::Internal("Ext^1 socle is empty".into()));
    }
    let xi = ext_lift.apply(&socle.column(0));
    let h = combine(&f, &hom1, &xi, p1.rep.zero_morphism_to(&left));

    // Pushout: middle = (left ⊕ P0) / image of (h, -syz).
    let sum = left.direct_sum(&p0.rep);
    let glue = RepMorphism::new((0..n).map(|x| h.at(x).vstack(&syz.at(x).neg())).collect());
    let (middle, quot) = sum.quotient(&glue.image_basis())?;
    let inclusion = RepMorphism::new(
        (0..n)
            .map(|x| quot.at(x).mul(&Matrix::identity(&f, left.dim(x)).vstack(&Matrix::zeros(&f, p0.rep.dim(x), left.dim(x)))))
            .collect(),
    );
    // middle -> m is induced by (0, pi) on the sum.
    let on_sum = RepMorphism::new((0..n).map(|x| Matrix::zeros(&f, m.dim(x), left.dim(x)).hstack(pi.at(x))).collect());
    let projection = RepMorphism::new(
        (0..n)
            .map(|x| {
                let sec = quot_section(&f, quot.at(x));
                on_sum.at(x).mul(&sec)
            })
            .collect(),
    );
    let seq = ArSequence {
        left,
        middle,
        right: m.clone(),
        inclusion,
        projection,
    };
    seq.validate()?;
    Ok(seq)
}

/// Right inverse of a surjective matrix.
fn quot_section<F: Field>(field: &F, q: &Matrix<F>) -> Matrix<F> {
    let id = Matrix::identity(field, q.rows());
    q.solve_all(&id).particular().expect("quotient map is surjective").clone()
}

impl<F: Field> ArSequence<F> {
    /// Exactness, additivity and non-splitness.
    pub fn validate(&self) -> Result<(), RepError> {
        let bad = |s: &str| Err(RepError::Internal(format!("almost split sequence check failed: {s}")));
        if !self.inclusion.is_homomorphism(&self.left, &self.middle) || !self.projection.is_homomorphism(&self.middle, &self.right) {
            return bad("maps are not homomorphisms");
        }
        if !self.inclusion.then(&self.projection).is_zero() {
            return bad("composite is nonzero");
        }
        let n = self.middle.dims().len();
        for x in 0..n {
            if self.left.dim(x) + self.right.dim(x) != self.middle.dim(x) {
                return bad("dimension vectors are not additive");
            }
            if self.inclusion.at(x).rank() != self.left.dim(x) || self.projection.at(x).rank() != self.right.dim(x) {
                return bad("not exact");
            }
        }
        let sections = self.right.hom_basis(&self.middle);
        let composites: Vec<RepMorphism<F>> = sections.iter().map(|s| s.then(&self.projection)).collect();
        if solve_in_span(self.middle.field(), &composites, &self.right.identity()).is_some() {
            return bad("sequence splits");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::quiver::fixtures::*;
    use crate::rep::{injective_at, is_isomorphic, projective_at};

    #[test]
    fn simple_at_source_of_a2() {
        let q = Arc::new(a2());
        let f = Rationals;
        let s = QuiverRep::simple(q.clone(), &f, 0);
        let seq = ar_sequence_ending_at(&s).unwrap();
        assert!(is_isomorphic(&seq.left, &QuiverRep::simple(q.clone(), &f, 1)).unwrap());
        assert!(is_isomorphic(&seq.middle, &projective_at(q, &f, 0).unwrap()).unwrap());
    }

    #[test]
    fn projective_has_no_sequence() {
        let q = Arc::new(a3());
        let p = projective_at(q, &Rationals, 1).unwrap();
        assert_eq!(ar_sequence_ending_at(&p).unwrap_err(), RepError::NotApplicable);
    }

    #[test]
    fn a3_middle_simple() {
        let q = Arc::new(a3());
        let f = PrimeField::new(5).unwrap();
        let s = QuiverRep::simple(q.clone(), &f, 1);
        let seq = ar_sequence_ending_at(&s).unwrap();
        // tau S_b = S_c; middle = P_b (dims 0,1,1).
        assert_eq!(seq.left.dims(), &[0, 0, 1]);
        assert_eq!(seq.middle.dims(), &[0, 1, 1]);
    }

    #[test]
    fn kronecker_preinjective() {
        let q = Arc::new(kronecker());
        let f = PrimeField::new(2).unwrap();
        // The injective at the source is simple; its mesh is (3,2) -> I_b^2 -> (1,0).
        let i = injective_at(q.clone(), &f, 0).unwrap();
        let seq = ar_sequence_ending_at(&i).unwrap();
        assert_eq!(seq.left.dims(), &[3, 2]);
        assert_eq!(seq.middle.dims(), &[4, 2]);
        assert!(!is_indecomposable(&seq.middle).unwrap());
    }
}
