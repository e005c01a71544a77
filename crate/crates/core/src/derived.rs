//! Simple complexes, irreducible maps between them, almost split triangles and the
//! classification of Auslander-Reiten components containing them.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{ProjModule, ProjMorphism, RszAlgebra, ShortPath};
use crate::complex::{assemble, cone, hom_homotopy, ComplexError, ComplexMorphism, HomotopyHom, ProjComplex};
use crate::cover::{CoverError, CoverVertex, CoverWindow};
use crate::field::Field;
use crate::koszul::{extract, koszul_morphism, koszul_rep, pushdown, pushdown_morphism, GradedQuiver, KoszulError};
use crate::matrix::{Matrix, SpanTracker};
use crate::quiver::{Quiver, QuiverError, ShapeClass};
use crate::rep::{ar_sequence_ending_at, injective_at, is_isomorphic, projective_at, QuiverRep, RepError, RepMorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivedError {
    #[error(transparent)]
    Koszul(#[from] KoszulError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("vertex `{0}` has no outgoing arrows")]
    NoOutgoing(String),
    #[error("not computable: {0}")]
    NotComputable(String),
    #[error("shift {shift} is not a residue modulo the grading period {period}")]
    BadShift { shift: i64, period: u64 },
}

/// Normalizes a shift into `Z_r`: unchanged for `r = 0`, otherwise `0..r`.
pub fn reduce_shift(s: i64, r: u64) -> i64 {
    if r == 0 {
        s
    } else {
        s.rem_euclid(r as i64)
    }
}

fn check_shift(s: i64, r: u64) -> Result<(), DerivedError> {
    if reduce_shift(s, r) == s {
        Ok(())
    } else {
        Err(DerivedError::BadShift { shift: s, period: r })
    }
}

/// A complex over the base algebra, with the window representation and shift it comes from.
#[derive(Clone, Debug)]
pub struct DerivedObject<F: Field> {
    pub presentation: ProjComplex<F>,
    pub provenance: Option<(QuiverRep<F>, i64)>,
}

impl<F: Field> DerivedObject<F> {
    pub fn is_perfect(&self) -> bool {
        !self.presentation.is_truncated()
    }

    /// Multiplicity of `P[b]` in each degree.
    pub fn multiplicities(&self) -> Vec<(i64, Vec<usize>)> {
        let n = self.presentation.algebra().quiver().vertex_count();
        match self.presentation.support_range() {
            None => Vec::new(),
            Some((lo, hi)) => (lo..=hi)
                .map(|d| {
                    let t = self.presentation.term(d);
                    (d, (0..n).map(|v| t.mult(v)).collect())
                })
                .collect(),
        }
    }
}

/// Recovers the provenance `(M, s)`, `s` in `Z_r`, of a radical complex `c = F_pi(M)[s]`.
///
/// Each `P[b]` in degree `n` lifts to the window vertex `(b, -n - s)`, so the lift fails
/// when `c` is not support-connected or its lift leaves the window.
pub fn lift<F: Field>(cw: &CoverWindow, c: &ProjComplex<F>) -> Result<DerivedObject<F>, DerivedError> {
    let not_pushed = |why: String| DerivedError::Koszul(KoszulError::NotKoszul(why));
    if !c.is_radical() {
        return Err(not_pushed("differential is not radical".into()));
    }
    let (lo, hi) = c.support_range().ok_or_else(|| not_pushed("zero complex".into()))?;
    let (b, _) = c.term(lo).iter().next().expect("nonzero term");
    let s = reduce_shift(-lo - cw.walk_offset(b), cw.period());
    let g = GradedQuiver::from_window(cw);
    let walg = g.algebra(c.algebra().field().clone());
    let place = |v: usize, n: i64| -> Result<usize, DerivedError> {
        let x = CoverVertex { level: -n - s, base: v };
        cw.index_of(x)
            .map_err(|_| not_pushed(format!("P[{}] in degree {n} does not lift to the window at shift {s}", cw.base().vertex(v))))
    };
    let mut terms = Vec::new();
    for n in lo..=hi {
        let mut t = ProjModule::new();
        for (v, k) in c.term(n).iter() {
            t.add(place(v, n)?, k);
        }
        terms.push(t);
    }
    let mut diffs = Vec::new();
    for n in lo..hi {
        let (src, tgt) = (&terms[(n - lo) as usize], &terms[(n - lo + 1) as usize]);
        let mut d = ProjMorphism::zero(src.clone(), tgt.clone());
        for (&(y, x, path), block) in c.diff(n).blocks() {
            let ShortPath::Arrow(alpha) = path else {
                unreachable!("radical differential");
            };
            let (wy, wx) = (place(y, n + 1)?, place(x, n)?);
            let arrow = cw
                .quiver()
                .arrows_between(wy, wx)
                .into_iter()
                .find(|&a| cw.arrows()[a].base_arrow == alpha)
                .ok_or_else(|| not_pushed(format!("arrow {} does not lift between the placed vertices", cw.base().arrow(alpha).id)))?;
            d.add_block(&walg, wy, wx, ShortPath::Arrow(arrow), block.clone()).map_err(ComplexError::from)?;
        }
        diffs.push(d);
    }
    let window = ProjComplex::new(walg, lo, terms, diffs, c.is_truncated())?;
    let (m, t) = extract(&g, &window)?;
    debug_assert_eq!(t, s);
    Ok(DerivedObject {
        presentation: c.clone(),
        provenance: Some((m, s)),
    })
}

/// The covering vertex `x` and shift `s` in `Z_r` with `S[a][n] = F_pi(I_x°)[s]`.
///
/// The Koszul image of `I_x°` is `S[a][t]` for `x = (a, t)`, so `t + s = n` with `t`
/// congruent to the walk degree from the anchor modulo `r`.
pub fn locate_simple(q: &Quiver, a: usize, n: i64) -> Result<(CoverVertex, i64), DerivedError> {
    q.require_connected()?;
    let probe = CoverWindow::build(q, None, 0, 0)?;
    let r = probe.period();
    let d = probe.walk_offset(a);
    let s = if r == 0 { n - d } else { (n - d).rem_euclid(r as i64) };
    Ok((CoverVertex { level: n - s, base: a }, s))
}

/// Minimal projective resolution of `S[a][shift]` keeping the degrees `>= lowest`;
/// flagged truncated when it continues below.
pub fn simple_complex<F: Field>(q: &Quiver, field: &F, a: usize, shift: i64, lowest: i64) -> Result<ProjComplex<F>, DerivedError> {
    let depth = -lowest - shift;
    if depth < 0 {
        return Err(DerivedError::NotComputable(format!("degree {lowest} lies above the top of S[{}][{shift}]", q.vertex(a))));
    }
    let cw = CoverWindow::build(q, Some(q.vertex(a)), 0, depth)?;
    let g = GradedQuiver::from_window(&cw);
    let base = RszAlgebra::new(q.clone(), field.clone());
    let x = cw.index_of(CoverVertex { level: 0, base: a })?;
    let inj = injective_at(g.opposite().clone(), field, x)?;
    let image = koszul_rep(&g, &g.algebra(field.clone()), &inj)?;
    Ok(pushdown(&cw, &base, &image)?.shift(shift))
}

/// Keeps degrees `>= from`, marking the result truncated if anything was dropped.
fn cut_below<F: Field>(c: &ProjComplex<F>, from: i64) -> ProjComplex<F> {
    if c.is_zero() || c.lo() >= from {
        return c.clone();
    }
    let dropped = (c.lo()..from).any(|n| !c.term(n).is_zero());
    let mut out = c.window(from, c.hi());
    out.set_truncated(c.is_truncated() || dropped);
    out
}

/// Classes in `Hom(c, d)` of composites `c -> z -> d` over all intermediate objects.
///
/// Each `z` must reach strictly lower than `d` (and `c` at least as low as `z`) so that
/// composites can be formed degreewise above the bottom of `d`'s window.
fn composite_span<F: Field>(
    c: &ProjComplex<F>,
    d: &ProjComplex<F>,
    hom_cd: &HomotopyHom<F>,
    zs: &[ProjComplex<F>],
) -> Result<SpanTracker<F>, DerivedError> {
    let f = c.algebra().field();
    let mut span = SpanTracker::new(f, hom_cd.dim);
    for z in zs {
        let h1 = hom_homotopy(c, z)?;
        if h1.dim == 0 {
            continue;
        }
        let h2 = hom_homotopy(z, d)?;
        for u in &h1.basis {
            for v in &h2.basis {
                let coords = hom_cd.class_coords(|n| match (u.at(n), v.at(n)) {
                    (Some(un), Some(vn)) => Some(un.then(vn)),
                    _ => None,
                });
                let coords = coords.ok_or_else(|| ComplexError::Shape("composite is not a chain map in the target window".into()))?;
                span.insert(&coords);
            }
        }
    }
    Ok(span)
}

/// `dim Hom`, the part spanned by composites through window objects, and the radical
/// modulo composites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IrrDims {
    pub hom: usize,
    /// Drops the identity for endomorphisms; simple complexes have local endomorphism rings
    /// with residue field the ground field.
    pub radical: usize,
    pub composites: usize,
    pub irr: usize,
}

/// Irreducible maps between two simple complexes, relative to the simple complexes
/// `S[c][k]` with `k` in `shifts` (other than the two ends).
pub fn simple_irr_dims<F: Field>(
    q: &Quiver,
    field: &F,
    source: (usize, i64),
    target: (usize, i64),
    shifts: std::ops::RangeInclusive<i64>,
    depth: i64,
) -> Result<IrrDims, DerivedError> {
    let top = (*shifts.end()).max(source.1).max(target.1);
    let floor = -top - depth;
    let d = simple_complex(q, field, target.0, target.1, floor)?;
    let c = simple_complex(q, field, source.0, source.1, floor - 2)?;
    let hom = hom_homotopy(&c, &d)?;
    let mut zs = Vec::new();
    for k in shifts {
        for b in 0..q.vertex_count() {
            if (b, k) == source || (b, k) == target {
                continue;
            }
            zs.push(simple_complex(q, field, b, k, floor - 1)?);
        }
    }
    let span = composite_span(&c, &d, &hom, &zs)?;
    let radical = if source == target { hom.dim.saturating_sub(1) } else { hom.dim };
    Ok(IrrDims {
        hom: hom.dim,
        radical,
        composites: span.dim(),
        irr: radical.saturating_sub(span.dim()),
    })
}

/// The canonical map `S[a] -> (+)_{alpha: a -> a_i} S[a_i][1]` with its verification.
#[derive(Clone, Debug)]
pub struct IrreducibleToSimples<F: Field> {
    pub source: ProjComplex<F>,
    pub target: ProjComplex<F>,
    /// Target vertex of each outgoing arrow, in arrow order.
    pub target_vertices: Vec<String>,
    pub map: ComplexMorphism<F>,
    /// Nonzero components by degree.
    pub nonzero_degrees: Vec<i64>,
    pub hom_dim: usize,
    pub nonzero: bool,
    pub composites_dim: usize,
    pub irreducible_in_window: bool,
    /// Shifts of the simple complexes tried as intermediate objects.
    pub window: (i64, i64),
}

/// Builds the map from the socle quotient `I_x° -> I_x°/soc` at `x = (a, 0)` and pushes it down.
pub fn irreducible_to_simples<F: Field>(q: &Quiver, field: &F, a: usize, depth: i64) -> Result<IrreducibleToSimples<F>, DerivedError> {
    let outs = q.out_arrows(a);
    if outs.is_empty() {
        return Err(DerivedError::NoOutgoing(q.vertex(a).to_string()));
    }
    let cw = CoverWindow::build(q, Some(q.vertex(a)), 0, depth + 3)?;
    let g = GradedQuiver::from_window(&cw);
    let walg = g.algebra(field.clone());
    let base = RszAlgebra::new(q.clone(), field.clone());
    let x = cw.index_of(CoverVertex { level: 0, base: a })?;
    let inj = injective_at(g.opposite().clone(), field, x)?;
    let (quot, proj) = inj.quotient(&inj.socle_basis())?;
    let fi = koszul_rep(&g, &walg, &inj)?;
    let fq = koszul_rep(&g, &walg, &quot)?;
    let fp = koszul_morphism(&g, &walg, &proj, &fi, &fq)?;
    let source = pushdown(&cw, &base, &fi)?;
    let full_target = pushdown(&cw, &base, &fq)?;
    let map = pushdown_morphism(&cw, &base, &fp, &fi, &fq)?;
    if !map.is_chain_map(&source, &full_target)? {
        return Err(DerivedError::Complex(ComplexError::Shape("pushed-down map is not a chain map".into())));
    }
    let target = cut_below(&full_target, -depth);
    let hom = hom_homotopy(&source, &target)?;
    let class = hom
        .class_of_morphism(&source, &target, &map)
        .ok_or_else(|| ComplexError::Shape("map does not define a class".into()))?;
    let nonzero = class.iter().any(|c| !field.is_zero(c));
    let window = (-1, 2);
    let mut zs = Vec::new();
    let targets: Vec<usize> = outs.iter().map(|&o| q.arrow(o).tgt).collect();
    for k in window.0..=window.1 {
        for b in 0..q.vertex_count() {
            if (b, k) == (a, 0) || (k == 1 && targets.contains(&b)) {
                continue;
            }
            zs.push(simple_complex(q, field, b, k, -depth - 2)?);
        }
    }
    let mut span = composite_span(&source, &target, &hom, &zs)?;
    let composites_dim = span.dim();
    let irreducible_in_window = nonzero && span.insert(&class);
    let nonzero_degrees = (map.lo..map.lo + map.components.len() as i64)
        .filter(|&n| !map.at(&source, &full_target, n).is_zero())
        .collect();
    Ok(IrreducibleToSimples {
        source,
        target,
        target_vertices: targets.iter().map(|&t| q.vertex(t).to_string()).collect(),
        map,
        nonzero_degrees,
        hom_dim: hom.dim,
        nonzero,
        composites_dim,
        irreducible_in_window,
        window,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleKind {
    /// Pushed down from an almost split sequence of window representations.
    FromSequence,
    /// The connecting triangle at a finite-dimensional indecomposable projective.
    AtProjective,
}

#[derive(Clone, Debug)]
pub struct ArTriangle<F: Field> {
    pub kind: TriangleKind,
    pub left: DerivedObject<F>,
    pub middle: DerivedObject<F>,
    pub middle_summands: Vec<DerivedObject<F>>,
    pub right: DerivedObject<F>,
    pub maps: TriangleMaps<F>,
    /// Alternating dimension vectors of the terms satisfy `left + right = middle`.
    pub euler_additive: bool,
}

/// `left -u-> middle_model -v-> right -w-> left[1]`.
#[derive(Clone, Debug)]
pub struct TriangleMaps<F: Field> {
    /// The middle term the maps are written against; homotopy equivalent to the radical middle.
    pub middle_model: ProjComplex<F>,
    pub u: ComplexMorphism<F>,
    pub v: ComplexMorphism<F>,
    pub w: ComplexMorphism<F>,
}

fn euler<F: Field>(c: &ProjComplex<F>) -> Vec<i64> {
    let alg = c.algebra();
    let mut out = vec![0i64; alg.quiver().vertex_count()];
    if let Some((lo, hi)) = c.support_range() {
        for n in lo..=hi {
            let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
            for (acc, d) in out.iter_mut().zip(c.term(n).dim_vector(alg)) {
                *acc += sign * d as i64;
            }
        }
    }
    out
}

/// Koszul image over the window, refusing images that reach the cut.
fn window_image<F: Field>(g: &GradedQuiver, walg: &RszAlgebra<F>, m: &QuiverRep<F>) -> Result<ProjComplex<F>, DerivedError> {
    let image = koszul_rep(g, walg, m)?;
    if image.is_truncated() {
        return Err(DerivedError::NotComputable("representation reaches the window cut; its image is not materialized".into()));
    }
    Ok(image)
}

fn pushed<F: Field>(
    cw: &CoverWindow,
    base: &RszAlgebra<F>,
    image: &ProjComplex<F>,
    m: &QuiverRep<F>,
    shift: i64,
) -> Result<DerivedObject<F>, DerivedError> {
    Ok(DerivedObject {
        presentation: pushdown(cw, base, image)?.shift(shift),
        provenance: Some((m.clone(), shift)),
    })
}

fn right_inverse<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>, DerivedError> {
    m.solve_all(&Matrix::identity(m.field(), m.rows()))
        .particular()
        .cloned()
        .ok_or_else(|| RepError::Internal("map in a short exact sequence is not surjective".into()).into())
}

/// `F(N) -> F(L)[1]` for `0 -> L -i-> M -p-> N -> 0`: the defect `d s - s d` of degreewise
/// sections `s` of `F(p)`, pulled back along `F(i)`.
fn connecting_map<F: Field>(
    walg: &RszAlgebra<F>,
    (i, p): (&RepMorphism<F>, &RepMorphism<F>),
    (fl, fm, fnn): (&ProjComplex<F>, &ProjComplex<F>, &ProjComplex<F>),
) -> Result<ComplexMorphism<F>, DerivedError> {
    let nv = walg.quiver().vertex_count();
    let sections = (0..nv).map(|x| right_inverse(p.at(x))).collect::<Result<Vec<_>, _>>()?;
    let retractions = (0..nv)
        .map(|x| right_inverse(&i.at(x).transpose()).map(|r| r.transpose()))
        .collect::<Result<Vec<_>, _>>()?;
    let section = |n: i64| -> Result<ProjMorphism<F>, DerivedError> {
        let (src, tgt) = (fnn.term(n), fm.term(n));
        let mut out = ProjMorphism::zero(src.clone(), tgt);
        for (x, _) in src.iter() {
            out.add_block(walg, x, x, ShortPath::Trivial(x), sections[x].clone()).map_err(ComplexError::from)?;
        }
        Ok(out)
    };
    let (lo, hi) = (fnn.lo(), fnn.hi());
    let mut components = Vec::new();
    for n in lo..=hi {
        let (here, next) = (section(n)?, section(n + 1)?);
        let defect = here
            .then(walg, &fm.diff(n))
            .and_then(|a| fnn.diff(n).then(walg, &next).and_then(|b| a.sub(&b)))
            .map_err(ComplexError::from)?;
        let mut w = ProjMorphism::zero(fnn.term(n), fl.term(n + 1));
        for (&(y, x, path), block) in defect.blocks() {
            w.add_block(walg, y, x, path, retractions[y].mul(block)).map_err(ComplexError::from)?;
        }
        components.push(w);
    }
    Ok(ComplexMorphism { lo, components })
}

/// The triangle `X -> C(w)[-1] -> Z -w-> X[1]` with its canonical maps.
fn cone_triangle<F: Field>(x: &ProjComplex<F>, z: &ProjComplex<F>, w: &ComplexMorphism<F>) -> Result<TriangleMaps<F>, DerivedError> {
    let alg = x.algebra();
    let f = alg.field();
    let middle_model = cone(w, z, &x.shift(1))?.shift(-1);
    let (lo, hi) = (middle_model.lo(), middle_model.hi());
    let mut u = Vec::new();
    let mut v = Vec::new();
    for n in lo..=hi {
        let (xn, zn) = (x.term(n), z.term(n));
        let (id_x, id_z) = (ProjMorphism::identity(f, &xn), ProjMorphism::identity(f, &zn));
        u.push(assemble(alg, std::slice::from_ref(&xn), &[zn.clone(), xn.clone()], &[vec![None], vec![Some(&id_x)]]).map_err(ComplexError::from)?);
        v.push(assemble(alg, &[zn.clone(), xn], &[zn], &[vec![Some(&id_z), None]]).map_err(ComplexError::from)?);
    }
    Ok(TriangleMaps {
        middle_model,
        u: ComplexMorphism { lo, components: u },
        v: ComplexMorphism { lo, components: v },
        w: w.clone(),
    })
}

/// The almost split triangle ending at `F_pi(M)[s]` (non-projective `M`) or at
/// `F_pi(P_x°)[s + 1]` (for `M = P_x°`).
pub fn ar_triangle<F: Field>(cw: &CoverWindow, m: &QuiverRep<F>, s: i64) -> Result<ArTriangle<F>, DerivedError> {
    check_shift(s, cw.period())?;
    let g = GradedQuiver::from_window(cw);
    if **m.quiver_arc() != **g.opposite() {
        return Err(KoszulError::WrongQuiver.into());
    }
    let field = m.field().clone();
    let base = RszAlgebra::new(cw.base().clone(), field.clone());
    let walg = g.algebra(field.clone());
    let result = match ar_sequence_ending_at(m) {
        Ok(seq) => {
            let (fl, fm, fnn) = (
                window_image(&g, &walg, &seq.left)?,
                window_image(&g, &walg, &seq.middle)?,
                window_image(&g, &walg, m)?,
            );
            let left = pushed(cw, &base, &fl, &seq.left, s)?;
            let middle = pushed(cw, &base, &fm, &seq.middle, s)?;
            let right = pushed(cw, &base, &fnn, m, s)?;
            let push = |f: &ComplexMorphism<F>, x: &ProjComplex<F>, y: &ProjComplex<F>| -> Result<ComplexMorphism<F>, DerivedError> {
                Ok(pushdown_morphism(cw, &base, f, x, y)?.shift(s))
            };
            let u = push(&koszul_morphism(&g, &walg, &seq.inclusion, &fl, &fm)?, &fl, &fm)?;
            let v = push(&koszul_morphism(&g, &walg, &seq.projection, &fm, &fnn)?, &fm, &fnn)?;
            let w_window = connecting_map(&walg, (&seq.inclusion, &seq.projection), (&fl, &fm, &fnn))?;
            let w = push(&w_window, &fnn, &fl.shift(1))?;
            ArTriangle {
                kind: TriangleKind::FromSequence,
                middle_summands: vec![middle.clone()],
                maps: TriangleMaps {
                    middle_model: middle.presentation.clone(),
                    u,
                    v,
                    w,
                },
                left,
                middle,
                right,
                euler_additive: false,
            }
        }
        Err(RepError::NotApplicable) => {
            let op = g.opposite().clone();
            let mut x = None;
            for v in 0..op.vertex_count() {
                if m.dims()[v] > 0 && is_isomorphic(m, &projective_at(op.clone(), &field, v)?)? {
                    x = Some(v);
                    break;
                }
            }
            let x = x.ok_or_else(|| RepError::Internal("projective without a matching P_x".into()))?;
            let inj = injective_at(op.clone(), &field, x)?;
            let (_, inj_top) = inj.soc_and_quotient();
            let rad = m.rad_sub();
            let (fi, fp) = (window_image(&g, &walg, &inj)?, window_image(&g, &walg, m)?);
            let left = pushed(cw, &base, &fi, &inj, s)?;
            let a = pushed(cw, &base, &window_image(&g, &walg, &inj_top)?, &inj_top, s)?;
            let b = pushed(cw, &base, &window_image(&g, &walg, &rad)?, &rad, s + 1)?;
            let right = pushed(cw, &base, &fp, m, s + 1)?;
            let middle = DerivedObject {
                presentation: a.presentation.direct_sum(&b.presentation)?,
                provenance: None,
            };
            // P_x° -> I_x° through the common simple at x; its image under F is the connecting map.
            let phi = m
                .hom_basis(&inj)
                .into_iter()
                .next()
                .ok_or_else(|| RepError::Internal("no map from P_x to I_x".into()))?;
            let w = pushdown_morphism(cw, &base, &koszul_morphism(&g, &walg, &phi, &fp, &fi)?, &fp, &fi)?.shift(s + 1);
            let maps = cone_triangle(&left.presentation, &right.presentation, &w)?;
            ArTriangle {
                kind: TriangleKind::AtProjective,
                left,
                middle,
                middle_summands: vec![a, b],
                right,
                maps,
                euler_additive: false,
            }
        }
        Err(e) => return Err(e.into()),
    };
    let lhs: Vec<i64> = euler(&result.left.presentation)
        .iter()
        .zip(euler(&result.right.presentation))
        .map(|(a, b)| a + b)
        .collect();
    let euler_additive = lhs == euler(&result.middle.presentation);
    Ok(ArTriangle { euler_additive, ..result })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectingClause {
    /// No infinite path: the component is `Z Q~`.
    ZCover,
    /// No right infinite path: left stable with only perfect complexes.
    LeftStablePerfect,
    /// Right infinite paths: a left-most section of non-perfect complexes.
    LeftMostNonPerfect,
    /// Right but no left infinite paths: `N Delta`.
    NDelta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectingProfile {
    pub period: u64,
    pub anchor: String,
    /// Walk degree from the anchor to each vertex.
    pub degrees: Vec<(String, i64)>,
    pub clause: ConnectingClause,
    pub section_shape: String,
}

impl ConnectingProfile {
    /// Whether `S[b][n]` lies in the connecting component through `S[anchor]`.
    pub fn contains(&self, b: &str, n: i64) -> bool {
        let Some(&(_, d)) = self.degrees.iter().find(|(v, _)| v == b) else {
            return false;
        };
        if self.period == 0 {
            n == d
        } else {
            (n - d).rem_euclid(self.period as i64) == 0
        }
    }
}

fn cover_shape_name(q: &Quiver, r: u64) -> String {
    if r == 0 {
        return q.classify_shape().map(|s| s.dynkin_label().unwrap_or_else(|| s.to_string())).unwrap_or_else(|_| "?".into());
    }
    match q.classify_shape() {
        Ok(ShapeClass::TildeA { n, forward, backward }) if forward == 0 || backward == 0 => {
            let _ = n;
            "A_inf^inf (linear)".to_string()
        }
        Ok(ShapeClass::TildeA { .. }) => "A_inf^inf".to_string(),
        _ => "infinite covering".to_string(),
    }
}

pub fn connecting_profile(q: &Quiver) -> Result<ConnectingProfile, DerivedError> {
    q.require_connected()?;
    let probe = CoverWindow::build(q, None, 0, 0)?;
    let r = probe.period();
    let paths = q.infinite_path_profile();
    let clause = match (paths.has_right_infinite, paths.has_left_infinite) {
        (false, false) => ConnectingClause::ZCover,
        (false, true) => ConnectingClause::LeftStablePerfect,
        (true, false) => ConnectingClause::NDelta,
        (true, true) => ConnectingClause::LeftMostNonPerfect,
    };
    Ok(ConnectingProfile {
        period: r,
        anchor: q.vertex(probe.anchor()).to_string(),
        degrees: (0..q.vertex_count()).map(|b| (q.vertex(b).to_string(), probe.walk_offset(b))).collect(),
        clause,
        section_shape: cover_shape_name(q, r),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentCount {
    Finite(usize),
    Infinite,
}

impl fmt::Display for ComponentCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentCount::Finite(n) => write!(f, "{n}"),
            ComponentCount::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentRow {
    pub shape: String,
    pub count: ComponentCount,
    pub contains_simple_complexes: bool,
    pub perfect_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub period: u64,
    pub quiver_shape: String,
    pub rows: Vec<ComponentRow>,
}

impl ComponentReport {
    pub fn is_infinite(&self) -> bool {
        self.rows.iter().any(|r| r.count == ComponentCount::Infinite)
    }

    pub fn table(&self) -> String {
        let mut out = format!("quiver: {}, r_Q: {}\n", self.quiver_shape, self.period);
        out.push_str(&format!("{:<28} {:>9} {:>8} {:>13}\n", "shape", "count", "simples", "perfect-only"));
        for r in &self.rows {
            out.push_str(&format!(
                "{:<28} {:>9} {:>8} {:>13}\n",
                r.shape,
                r.count.to_string(),
                if r.contains_simple_complexes { "yes" } else { "no" },
                if r.perfect_only { "yes" } else { "no" }
            ));
        }
        out
    }
}

/// Components of the Auslander-Reiten quiver of the bounded derived category, by the
/// classification for Dynkin quivers, oriented cycles and non-gradable cycles.
pub fn classify_components(q: &Quiver) -> Result<ComponentReport, DerivedError> {
    q.require_connected()?;
    let r = q.grading_period()?;
    let shape = q.classify_shape()?;
    let row = |shape: String, count: ComponentCount, simples: bool, perfect: bool| ComponentRow {
        shape,
        count,
        contains_simple_complexes: simples,
        perfect_only: perfect,
    };
    let rows = match &shape {
        s if s.is_dynkin() => {
            let label = s.dynkin_label().expect("Dynkin");
            vec![row(format!("Z{label}"), ComponentCount::Finite(1), true, true)]
        }
        ShapeClass::TildeA { n, forward, backward } if *forward == 0 || *backward == 0 => vec![
            row("ZA_inf".into(), ComponentCount::Finite(*n), false, true),
            row("double infinite path".into(), ComponentCount::Finite(*n), true, false),
        ],
        ShapeClass::TildeA { n, .. } if r > 0 && (r as usize) < *n => vec![
            row("ZA_inf".into(), ComponentCount::Finite(2 * r as usize), false, true),
            row("ZQ~".into(), ComponentCount::Finite(r as usize), true, true),
        ],
        _ => vec![row("components".into(), ComponentCount::Infinite, true, !q.has_oriented_cycle())],
    };
    Ok(ComponentReport {
        period: r,
        quiver_shape: shape.to_string(),
        rows,
    })
}

/// Convenience for callers holding an `Arc`.
pub fn classify_arc(q: &Arc<Quiver>) -> Result<ComponentReport, DerivedError> {
    classify_components(q)
}

/// Multiplicities by degree of the push-down of `F(M)[shift]`, read off the dimension vector.
pub fn expected_multiplicities(cw: &CoverWindow, dims: &[usize], shift: i64) -> Vec<(i64, ProjModule)> {
    let mut by_degree: std::collections::BTreeMap<i64, ProjModule> = std::collections::BTreeMap::new();
    for (v, &d) in dims.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let cv = cw.vertices()[v];
        by_degree.entry(-cv.level - shift).or_default().add(cv.base, d);
    }
    by_degree.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::find_isomorphism;
    use crate::field::{PrimeField, Rationals};
    use crate::quiver::fixtures::*;

    #[test]
    fn locate_examples() {
        let (x, s) = locate_simple(&a2(), 1, 0).unwrap();
        assert_eq!((x, s), (CoverVertex { level: 1, base: 1 }, -1));
        for n in -3..=3 {
            assert_eq!(locate_simple(&loop1(), 0, n).unwrap(), (CoverVertex { level: n, base: 0 }, 0));
        }
        let (x, s) = locate_simple(&two_cycle(), 1, 0).unwrap();
        assert_eq!(s, 1);
        assert_eq!(x, CoverVertex { level: -1, base: 1 });
    }

    #[test]
    fn simple_complex_homology() {
        let f = PrimeField::new(3).unwrap();
        for q in [a3(), loop1(), cycle(3)] {
            for a in 0..q.vertex_count() {
                for shift in [-1, 0, 2] {
                    let c = simple_complex(&q, &f, a, shift, -shift - 4).unwrap();
                    let mut expected = vec![0; q.vertex_count()];
                    expected[a] = 1;
                    let h = c.homology();
                    assert_eq!(h.len(), 1, "{h:?}");
                    assert_eq!(h.get(&-shift), Some(&expected));
                }
            }
        }
    }

    #[test]
    fn irreducible_a2() {
        let r = irreducible_to_simples(&a2(), &Rationals, 0, 3).unwrap();
        assert_eq!(r.target_vertices, vec!["b".to_string()]);
        assert_eq!(r.nonzero_degrees, vec![-1]);
        assert_eq!(r.hom_dim, 1);
        assert!(r.nonzero && r.irreducible_in_window);
        assert!(matches!(irreducible_to_simples(&a2(), &Rationals, 1, 3), Err(DerivedError::NoOutgoing(_))));
    }

    #[test]
    fn irreducible_loop_and_fork() {
        let f = PrimeField::new(5).unwrap();
        let r = irreducible_to_simples(&loop1(), &f, 0, 4).unwrap();
        assert_eq!(r.hom_dim, 1);
        assert!(r.irreducible_in_window);
        let fork = Quiver::build(&["a", "b", "c"], &[("x", "a", "b"), ("y", "a", "c")]).unwrap();
        let r = irreducible_to_simples(&fork, &f, 0, 3).unwrap();
        assert_eq!(r.target_vertices.len(), 2);
        assert_eq!(r.hom_dim, 2);
        assert!(r.irreducible_in_window);
        assert_eq!(r.target.term(-1), ProjModule::from_pairs([(1, 1), (2, 1)]));
    }

    #[test]
    fn loop_irr_pattern() {
        let f = PrimeField::new(3).unwrap();
        for m in 0..=3 {
            let d = simple_irr_dims(&loop1(), &f, (0, 0), (0, m), -1..=4, 3).unwrap();
            assert_eq!(d.hom, 1, "m = {m}");
            assert_eq!(d.irr, usize::from(m == 1), "m = {m}");
        }
    }

    #[test]
    fn triangles_on_a2_window() {
        let cw = CoverWindow::build(&a2(), None, 0, 1).unwrap();
        let g = GradedQuiver::from_window(&cw);
        let op = g.opposite().clone();
        // In the opposite window the source is b@1; its simple is not projective.
        let s = QuiverRep::simple(op.clone(), &Rationals, 1);
        let t = ar_triangle(&cw, &s, -1).unwrap();
        assert_eq!(t.kind, TriangleKind::FromSequence);
        assert!(t.euler_additive);
        for v in 0..2 {
            let p = projective_at(op.clone(), &Rationals, v).unwrap();
            let t = ar_triangle(&cw, &p, 0).unwrap();
            assert_eq!(t.kind, TriangleKind::AtProjective);
            assert!(t.euler_additive);
        }
    }

    fn null_homotopic<F: Field>(x: &ProjComplex<F>, y: &ProjComplex<F>, f: &ComplexMorphism<F>) -> bool {
        let hom = hom_homotopy(x, y).unwrap();
        let c = hom.class_of_morphism(x, y, f).expect("chain map");
        c.iter().all(|e| x.algebra().field().is_zero(e))
    }

    fn check_triangle_maps<F: Field>(t: &ArTriangle<F>) {
        let (x, z) = (&t.left.presentation, &t.right.presentation);
        let TriangleMaps { middle_model: y, u, v, w } = &t.maps;
        let x1 = x.shift(1);
        assert!(u.is_chain_map(x, y).unwrap());
        assert!(v.is_chain_map(y, z).unwrap());
        assert!(w.is_chain_map(z, &x1).unwrap());
        assert!(null_homotopic(x, z, &u.then(v, x, y, z).unwrap()));
        assert!(null_homotopic(y, &x1, &v.then(w, y, z, &x1).unwrap()));
        assert!(!null_homotopic(z, &x1, w), "almost split triangles do not split");
        let mut next = {
            let mut k = 0i64;
            move || {
                k = (k * 7 + 3) % 101;
                k - 50
            }
        };
        let middle = y.radicalize();
        assert!(find_isomorphism(&middle, &t.middle.presentation, &mut next, 8).unwrap().is_some());
    }

    #[test]
    fn triangle_maps_compose_to_zero() {
        let f = PrimeField::new(101).unwrap();
        for (q, lo, hi) in [(a2(), 0, 1), (a3(), 0, 2)] {
            let cw = CoverWindow::build(&q, None, lo, hi).unwrap();
            let g = GradedQuiver::from_window(&cw);
            let op = g.opposite().clone();
            let k = crate::rep::knit_preinjective(op.clone(), &f, 20).unwrap();
            for m in &k.reps {
                for s in [0, 1] {
                    check_triangle_maps(&ar_triangle(&cw, m, s).unwrap());
                }
            }
        }
    }

    #[test]
    fn shift_must_be_reduced() {
        let cw = CoverWindow::build(&loop1(), None, 0, 3).unwrap();
        let g = GradedQuiver::from_window(&cw);
        let s = QuiverRep::simple(g.opposite().clone(), &Rationals, 1);
        assert!(matches!(ar_triangle(&cw, &s, 2), Err(DerivedError::BadShift { .. })));
    }

    #[test]
    fn classification_table() {
        let a = classify_components(&a3()).unwrap();
        assert_eq!(a.rows.len(), 1);
        assert_eq!(a.rows[0].shape, "ZA3");
        let l = classify_components(&loop1()).unwrap();
        assert_eq!(l.rows[0].count, ComponentCount::Finite(1));
        assert_eq!(l.rows[1].count, ComponentCount::Finite(1));
        let c = classify_components(&cycle(3)).unwrap();
        assert_eq!(c.rows[0].count, ComponentCount::Finite(3));
        let m = classify_components(&mixed_three_cycle()).unwrap();
        assert_eq!(m.rows[0].count, ComponentCount::Finite(2));
        assert_eq!(m.rows[1].count, ComponentCount::Finite(1));
        assert!(classify_components(&kronecker()).unwrap().is_infinite());
    }

    #[test]
    fn connecting_profiles() {
        let p = connecting_profile(&loop1()).unwrap();
        assert_eq!(p.clause, ConnectingClause::LeftMostNonPerfect);
        assert!(p.contains("a", 5));
        let gradable_cycle = Quiver::build(&["a", "b", "c", "d"], &[("x", "a", "b"), ("y", "c", "b"), ("z", "c", "d"), ("w", "a", "d")]).unwrap();
        let p = connecting_profile(&gradable_cycle).unwrap();
        assert_eq!(p.clause, ConnectingClause::ZCover);
        assert!(p.contains("b", 1) && !p.contains("b", 0));
        assert_eq!(connecting_profile(&cycle(3)).unwrap().clause, ConnectingClause::LeftMostNonPerfect);
    }
}
