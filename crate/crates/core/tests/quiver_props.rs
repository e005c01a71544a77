//! Walk degrees, grading periods and covering windows on random connected quivers.

use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;
use proptest::prelude::*;
use rsq_core::cover::CoverWindow;
use rsq_core::quiver::{Direction, Quiver, Walk};

/// A spanning path with random orientations plus up to three extra arrows, at most six in all.
fn connected_quiver() -> impl Strategy<Value = Quiver> {
    (1usize..=4)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(any::<bool>(), n - 1),
                proptest::collection::vec((0..n, 0..n), 0..=(6 - (n - 1)).min(3)),
            )
        })
        .prop_map(|(n, flips, extra)| {
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut arrows = Vec::new();
            for (i, &flip) in flips.iter().enumerate() {
                let (s, t) = if flip { (i + 1, i) } else { (i, i + 1) };
                arrows.push((format!("t{i}"), names[s].clone(), names[t].clone()));
            }
            for (j, &(s, t)) in extra.iter().enumerate() {
                arrows.push((format!("e{j}"), names[s].clone(), names[t].clone()));
            }
            Quiver::new(names, arrows).unwrap()
        })
}

fn neighbours(q: &Quiver, v: usize) -> Vec<(usize, Direction, usize)> {
    let mut out = Vec::new();
    for (i, a) in q.arrows().iter().enumerate() {
        if a.src == v {
            out.push((i, Direction::Forward, a.tgt));
        }
        if a.tgt == v {
            out.push((i, Direction::Backward, a.src));
        }
    }
    out
}

/// Random walk from `base` steered by `choices`, closed by a shortest route back.
fn closed_walk(q: &Quiver, base: usize, choices: &[usize]) -> Walk {
    let mut steps = Vec::new();
    let mut v = base;
    for &c in choices {
        let nb = neighbours(q, v);
        if nb.is_empty() {
            break;
        }
        let (a, d, w) = nb[c % nb.len()];
        steps.push((a, d));
        v = w;
    }
    // Breadth-first route from v back to base.
    let mut prev = vec![None; q.vertex_count()];
    let mut seen = vec![false; q.vertex_count()];
    let mut queue = VecDeque::from([v]);
    seen[v] = true;
    while let Some(u) = queue.pop_front() {
        for (a, d, w) in neighbours(q, u) {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((u, a, d));
                queue.push_back(w);
            }
        }
    }
    let mut back = Vec::new();
    let mut u = base;
    while u != v {
        let (p, a, d) = prev[u].expect("connected");
        back.push((a, d));
        u = p;
    }
    back.reverse();
    steps.extend(back);
    Walk { base, steps }
}

fn oracle_period(q: &Quiver) -> u64 {
    let mut g = 0u64;
    for start in 0..q.vertex_count() {
        let mut frontier = BTreeSet::from([(start, 0i64)]);
        for _ in 0..2 * q.arrow_count() {
            let next: BTreeSet<(usize, i64)> = frontier
                .iter()
                .flat_map(|&(v, d)| {
                    neighbours(q, v).into_iter().map(move |(_, dir, w)| match dir {
                        Direction::Forward => (w, d + 1),
                        Direction::Backward => (w, d - 1),
                    })
                })
                .collect();
            for &(v, d) in &next {
                if v == start {
                    g = g.gcd(&d.unsigned_abs());
                }
            }
            frontier = next;
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_walk_degrees_are_multiples_of_the_period(
        q in connected_quiver(),
        choices in proptest::collection::vec(0usize..8, 0..12),
    ) {
        let r = q.grading_period().unwrap();
        for base in 0..q.vertex_count() {
            let w = closed_walk(&q, base, &choices);
            let d = q.walk_degree(&w).unwrap();
            if r == 0 {
                prop_assert_eq!(d, 0);
            } else {
                prop_assert_eq!(d.rem_euclid(r as i64), 0);
            }
        }
    }

    #[test]
    fn gradable_iff_period_zero(q in connected_quiver()) {
        prop_assert_eq!(q.is_gradable().unwrap(), q.grading_period().unwrap() == 0);
    }

    #[test]
    fn period_matches_closed_walk_enumeration(q in connected_quiver()) {
        prop_assert_eq!(q.grading_period().unwrap(), oracle_period(&q));
        prop_assert_eq!(q.opposite().grading_period().unwrap(), q.grading_period().unwrap());
    }

    #[test]
    fn window_arrows_climb_and_cover_locally(q in connected_quiver(), lo in -3i64..=0, hi in 0i64..=3) {
        let cw = CoverWindow::build(&q, None, lo, hi).unwrap();
        let wq = cw.quiver();
        prop_assert!(!wq.has_oriented_cycle());
        for a in cw.arrows() {
            prop_assert_eq!(cw.vertices()[a.tgt].level, cw.vertices()[a.src].level + 1);
            prop_assert_eq!(cw.vertices()[a.src].base, q.arrow(a.base_arrow).src);
            prop_assert_eq!(cw.vertices()[a.tgt].base, q.arrow(a.base_arrow).tgt);
        }
        // At most one window vertex per (level, base vertex).
        let keys: BTreeSet<(i64, usize)> = cw.vertices().iter().map(|v| (v.level, v.base)).collect();
        prop_assert_eq!(keys.len(), cw.vertices().len());
        for (i, v) in cw.vertices().iter().enumerate() {
            let out: Vec<usize> = cw.arrows().iter().filter(|a| a.src == i).map(|a| a.base_arrow).collect();
            let inc: Vec<usize> = cw.arrows().iter().filter(|a| a.tgt == i).map(|a| a.base_arrow).collect();
            if v.level < hi {
                let mut out_sorted = out.clone();
                out_sorted.sort_unstable();
                prop_assert_eq!(out_sorted, q.out_arrows(v.base));
            }
            if v.level > lo {
                let mut in_sorted = inc.clone();
                in_sorted.sort_unstable();
                prop_assert_eq!(in_sorted, q.in_arrows(v.base));
            }
        }
    }
}
