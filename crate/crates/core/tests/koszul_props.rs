//! The Koszul functor on random window representations: exactness, shifts, push-down and translation.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rsq_core::algebra::{ProjModule, RszAlgebra};
use rsq_core::complex::{hom_homotopy, ProjComplex};
use rsq_core::cover::CoverWindow;
use rsq_core::field::PrimeField;
use rsq_core::koszul::{extract, koszul_morphism, koszul_rep, pushdown, rho_shift_complex, rho_shift_rep, twist, GradedQuiver};
use rsq_core::quiver::fixtures::{a3, cycle, kronecker, loop1, two_cycle};
use rsq_core::quiver::Quiver;
use rsq_core::rep::{QuiverRep, RepMorphism};
use rsq_core::sample::random_rep;

fn field() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

struct Setup {
    cw: CoverWindow,
    g: GradedQuiver,
    walg: RszAlgebra<PrimeField>,
}

fn setup(q: &Quiver, lo: i64, hi: i64) -> Setup {
    let cw = CoverWindow::build(q, None, lo, hi).unwrap();
    let g = GradedQuiver::from_window(&cw);
    let walg = g.algebra(field());
    Setup { cw, g, walg }
}

/// Random representation supported strictly below the cut level.
fn rep_below_cut(s: &Setup, max_dim: usize, levels: Option<(i64, i64)>, rng: &mut ChaCha8Rng) -> QuiverRep<PrimeField> {
    let allowed: Vec<bool> = s
        .g
        .levels()
        .iter()
        .map(|&l| s.g.cut_above().is_none_or(|c| l < c) && levels.is_none_or(|(a, b)| (a..=b).contains(&l)))
        .collect();
    random_rep(s.g.opposite().clone(), &field(), &allowed, max_dim, rng).unwrap()
}

fn term_dim(alg: &RszAlgebra<PrimeField>, c: &ProjComplex<PrimeField>, n: i64) -> usize {
    c.term(n).dim(alg)
}

/// Checks that `F(L) -> F(M) -> F(N)` is exact in every degree.
fn assert_exact(
    s: &Setup,
    (l, i): (&QuiverRep<PrimeField>, &RepMorphism<PrimeField>),
    m: &QuiverRep<PrimeField>,
    (n, p): (&QuiverRep<PrimeField>, &RepMorphism<PrimeField>),
) -> Result<(), TestCaseError> {
    let (fl, fm, fnn) = (
        koszul_rep(&s.g, &s.walg, l).unwrap(),
        koszul_rep(&s.g, &s.walg, m).unwrap(),
        koszul_rep(&s.g, &s.walg, n).unwrap(),
    );
    let fi = koszul_morphism(&s.g, &s.walg, i, &fl, &fm).unwrap();
    let fp = koszul_morphism(&s.g, &s.walg, p, &fm, &fnn).unwrap();
    prop_assert!(fi.is_chain_map(&fl, &fm).unwrap());
    prop_assert!(fp.is_chain_map(&fm, &fnn).unwrap());
    let lo = fl.lo().min(fm.lo()).min(fnn.lo());
    let hi = fl.hi().max(fm.hi()).max(fnn.hi());
    for k in lo..=hi {
        let a = fi.at(&fl, &fm, k).realize_matrix(&s.walg);
        let b = fp.at(&fm, &fnn, k).realize_matrix(&s.walg);
        let (dl, dm, dn) = (term_dim(&s.walg, &fl, k), term_dim(&s.walg, &fm, k), term_dim(&s.walg, &fnn, k));
        prop_assert_eq!(dm, dl + dn);
        if dl > 0 {
            prop_assert_eq!(a.rank(), dl);
        }
        if dn > 0 {
            prop_assert_eq!(b.rank(), dn);
        }
        if dl > 0 && dn > 0 {
            prop_assert!(b.mul(&a).is_zero());
        }
    }
    Ok(())
}

fn pick_quiver(pick: usize) -> Quiver {
    [a3(), kronecker(), loop1(), cycle(3), two_cycle()][pick].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn short_exact_sequences_stay_exact(pick in 0usize..5, seed in any::<u64>()) {
        let s = setup(&pick_quiver(pick), -1, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rep_below_cut(&s, 2, None, &mut rng);
        for basis in [m.radical_basis(), m.socle_basis()] {
            let (l, i) = m.subrep(&basis).unwrap();
            let (n, p) = m.quotient(&basis).unwrap();
            assert_exact(&s, (&l, &i), &m, (&n, &p))?;
        }
    }

    #[test]
    fn morphisms_between_images_live_in_shifts_zero_and_one(pick in 0usize..2, seed in any::<u64>()) {
        let s = setup(&pick_quiver(pick), 0, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rep_below_cut(&s, 1, None, &mut rng);
        let n = rep_below_cut(&s, 1, None, &mut rng);
        let (fm, fnn) = (koszul_rep(&s.g, &s.walg, &m).unwrap(), koszul_rep(&s.g, &s.walg, &n).unwrap());
        for shift in -2i64..=3 {
            let h = hom_homotopy(&fm, &fnn.shift(shift)).unwrap().dim;
            match shift {
                0 => prop_assert_eq!(h, m.hom_dim(&n)),
                1 => {}
                _ => prop_assert_eq!(h, 0, "shift {}", shift),
            }
        }
    }

    #[test]
    fn extract_recovers_rep_and_shift(pick in 0usize..5, seed in any::<u64>(), shift in -3i64..=3) {
        let s = setup(&pick_quiver(pick), -1, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rep_below_cut(&s, 2, None, &mut rng);
        prop_assume!(!m.is_zero());
        let c = koszul_rep(&s.g, &s.walg, &m).unwrap().shift(shift);
        let (n, t) = extract(&s.g, &c).unwrap();
        prop_assert_eq!(t, shift);
        prop_assert_eq!(n.dims(), m.dims());
        prop_assert_eq!(koszul_rep(&s.g, &s.walg, &n).unwrap().shift(t), c);
    }

    #[test]
    fn pushdown_degrees_agree_modulo_the_period(pick in 2usize..5, seed in any::<u64>(), t in -2i64..=2) {
        let q = pick_quiver(pick);
        let s = setup(&q, -2, 3);
        let r = s.cw.period() as i64;
        let base = RszAlgebra::new(q.clone(), field());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rep_below_cut(&s, 2, None, &mut rng);
        let c = pushdown(&s.cw, &base, &koszul_rep(&s.g, &s.walg, &m).unwrap()).unwrap().shift(t);
        for a in 0..q.vertex_count() {
            let degrees: Vec<i64> = (c.lo()..=c.hi()).filter(|&n| c.term(n).mult(a) > 0).collect();
            for w in degrees.windows(2) {
                prop_assert_eq!((w[1] - w[0]).rem_euclid(r), 0);
            }
        }
    }

    #[test]
    fn pushdown_homs_respect_the_degree_law(pick in 3usize..5, seed in any::<u64>(), t in 0i64..=4, u in 0i64..=4) {
        let q = pick_quiver(pick);
        let s = setup(&q, -2, 3);
        let r = s.cw.period() as i64;
        let base = RszAlgebra::new(q.clone(), field());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rep_below_cut(&s, 2, Some((-1, 2)), &mut rng);
        let n = rep_below_cut(&s, 2, Some((-1, 2)), &mut rng);
        prop_assume!(!m.is_zero() && !n.is_zero());
        let pm = pushdown(&s.cw, &base, &koszul_rep(&s.g, &s.walg, &m).unwrap()).unwrap().shift(t);
        let pn = pushdown(&s.cw, &base, &koszul_rep(&s.g, &s.walg, &n).unwrap()).unwrap().shift(u);
        let h = hom_homotopy(&pm, &pn).unwrap().dim;
        if h > 0 {
            let d = (u - t).rem_euclid(r);
            prop_assert!(d == 0 || d == 1 % r, "shifts {} {} with period {}", t, u, r);
        }
    }

    #[test]
    fn translation_matches_twist(seed in any::<u64>(), step in prop_oneof![Just(-1i64), Just(1i64)]) {
        let q = cycle(3);
        let s = setup(&q, -3, 6);
        let r = s.cw.period() as i64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rep_below_cut(&s, 2, Some((0, 2)), &mut rng);
        prop_assume!(!m.is_zero());
        let fm = koszul_rep(&s.g, &s.walg, &m).unwrap();
        let lhs = twist(&rho_shift_complex(&s.cw, &s.walg, &fm, step).unwrap(), step * r);
        let moved = rho_shift_rep(&s.cw, &s.g, &m, step).unwrap();
        let rhs = koszul_rep(&s.g, &s.walg, &moved).unwrap().shift(-step * r);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(moved.total_dim(), m.total_dim());
    }
}

#[test]
fn empty_terms_have_no_dimension() {
    let s = setup(&a3(), 0, 1);
    assert_eq!(ProjModule::new().dim(&s.walg), 0);
}
