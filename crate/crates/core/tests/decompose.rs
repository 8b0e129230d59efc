use sharpflat_core::decompose::gen::Generator;
use sharpflat_core::decompose::{
    compose1_with, compose2, decompose1_with, decompose2, input_margin, input_margin2, normalize_column, rank1_factor,
    LogSolver, Rank1Outcome,
};
use sharpflat_core::logmatrix::log_matrix;
use sharpflat_core::padic::{ExtensionElement, RingDescriptor, RingKind};
use sharpflat_core::series::{Algebra, Mat2, TruncSeries1};
use sharpflat_core::Error;

#[test]
fn hundred_pairs_round_trip_at_cap_81() {
    let (p, ap, prec, cap) = (3, 3, 12, 81);
    let margin = input_margin(p, ap, cap).unwrap();
    let wide = prec + margin;
    let base = RingDescriptor::new(p, ap, RingKind::Base, wide).unwrap();
    let up = LogSolver::new(log_matrix(p, ap, wide, cap).unwrap()).unwrap();
    let mut gen = Generator::new(2024);
    let mut down: Option<LogSolver> = None;
    for trial in 0..100 {
        let pair = gen.pair(&base, cap).unwrap();
        let l = compose1_with(&pair, &up).unwrap();
        let data = l[0].prec().min(l[1].prec());
        let solver = down.get_or_insert_with(|| LogSolver::new(log_matrix(p, ap, data, cap).unwrap()).unwrap());
        let l = [l[0].recast(solver.ring()).unwrap(), l[1].recast(solver.ring()).unwrap()];
        let back = decompose1_with(&l, solver, prec).unwrap();
        assert!(back.certificate.is_integral());
        assert_eq!(back.sharp, pair.sharp.with_prec(prec), "trial {trial}");
        assert_eq!(back.flat, pair.flat.with_prec(prec), "trial {trial}");
        if trial < 10 {
            // a unit perturbation of one coefficient leaves the image
            let mut bad = l.clone();
            let k = (gen.below(cap as u64)) as usize;
            let c = bad[0].coeff(k).add(&ExtensionElement::one(bad[0].ring()));
            bad[0].set_coeff(k, c);
            match decompose1_with(&bad, solver, prec) {
                Err(Error::NotDecomposable(_)) => {}
                other => panic!("trial {trial}: {other:?}"),
            }
        }
    }
}

#[test]
fn twenty_five_four_matrices_round_trip() {
    let (p, ap, prec, caps) = (3, 3, 10, (27, 27));
    let margin = input_margin2(p, ap, caps).unwrap();
    let base = RingDescriptor::new(p, ap, RingKind::Base, prec + margin).unwrap();
    let target = base.at_prec(prec).unwrap();
    let mut gen = Generator::new(99);
    for trial in 0..25 {
        let m = gen.four(&base, caps);
        let l = compose2(&m, prec + margin, caps).unwrap();
        let back = decompose2(&l, prec, caps).unwrap();
        assert!(back.certificate.is_integral());
        for (a, b) in back.matrix.entries().iter().zip(m.entries()) {
            assert_eq!(**a, b.map(|c| c.with_prec(prec)).recast(&target).unwrap(), "trial {trial}");
        }
        if trial < 5 {
            let mut bad = l.clone();
            let mut e = bad.get(1, 0).clone();
            let c = e.coeff(3, 2).add(&ExtensionElement::one(e.ring()));
            e.set(3, 2, c);
            bad = Mat2::new(bad.get(0, 0).clone(), bad.get(0, 1).clone(), e, bad.get(1, 1).clone());
            assert!(matches!(decompose2(&bad, prec, caps), Err(Error::NotDecomposable(_))), "trial {trial}");
        }
    }
}

#[test]
fn fifty_rank_one_trials() {
    let base = RingDescriptor::new(3, 3, RingKind::Base, 12).unwrap();
    let cap = 24;
    let mut gen = Generator::new(5);
    for trial in 0..50 {
        let (col, row) = gen.rank1_pair(&base, cap, 4).unwrap();
        let m = Mat2::new(col[0].mul(&row[0]), col[0].mul(&row[1]), col[1].mul(&row[0]), col[1].mul(&row[1]));
        let Rank1Outcome::Factored(f) = rank1_factor(&m).unwrap() else { panic!("trial {trial}") };
        let want = normalize_column(&col).unwrap();
        let c = f.cap();
        assert_eq!(f.col[0], want[0].with_cap(c), "trial {trial}");
        assert_eq!(f.col[1], want[1].with_cap(c), "trial {trial}");
        for (a, b) in f.outer().entries().iter().zip(m.entries()) {
            assert_eq!(**a, b.with_cap(c), "trial {trial}");
        }
    }
    let one = TruncSeries1::one(&base, cap);
    let z = TruncSeries1::zero(&base, cap);
    let x = TruncSeries1::var(&base, cap);
    assert!(matches!(rank1_factor(&Mat2::new(x, z.clone(), z, one)).unwrap(), Rank1Outcome::NotRankOne { .. }));
}

use sharpflat_core::decompose::{
    compose1, decompose1, decompose_finite, pair_at_level, restrict_diag, stabilize, tower_from_pair, LPair, Provenance,
    Root,
};
use sharpflat_core::padic::Embedding;
use sharpflat_core::series::{eval_character, TruncSeries2};

#[test]
fn unit_pair_gives_first_row() {
    let (prec, cap) = (8, 27);
    let base = RingDescriptor::new(3, 3, RingKind::Base, prec + 20).unwrap();
    let pair = LPair::new(TruncSeries1::one(&base, cap), TruncSeries1::zero(&base, cap), Provenance::Synthetic).unwrap();
    let l = compose1(&pair, prec + 20, cap).unwrap();
    let log = log_matrix(3, 3, prec + 20, cap).unwrap().matrix;
    assert_eq!(l[0], *log.get(0, 0));
    assert_eq!(l[1], *log.get(0, 1));
    let back = decompose1(&[log.get(0, 0).clone(), log.get(0, 1).clone()], prec, cap).unwrap();
    assert_eq!(back.sharp, TruncSeries1::one(&base, cap).with_prec(prec).recast(&base.at_prec(prec).unwrap()).unwrap());
    assert!(back.flat.is_zero());
}

#[test]
fn identity_four_matrix_and_symmetry() {
    let (prec, caps) = (8, (9, 9));
    let margin = input_margin2(3, 3, caps).unwrap();
    let base = RingDescriptor::new(3, 3, RingKind::Base, prec + margin).unwrap();
    let one = TruncSeries2::one(&base, caps);
    let zero = TruncSeries2::zero(&base, caps);
    let id = Mat2::new(one.clone(), zero.clone(), zero.clone(), one.clone());
    let l = compose2(&id, prec + margin, caps).unwrap();
    let back = decompose2(&l, prec, caps).unwrap().matrix;
    assert!(back.get(0, 1).coeffs().iter().all(|c| c.is_zero()));
    assert!(back.get(1, 0).coeffs().iter().all(|c| c.is_zero()));
    assert_eq!(back.get(0, 0).coeff(0, 0), &ExtensionElement::one(back.get(0, 0).ring()));

    let mut gen = Generator::new(17);
    let m = gen.four(&base, caps);
    let l = compose2(&m, prec + margin, caps).unwrap();
    let swapped = l.transpose().map(|e| e.swap_vars());
    let a = decompose2(&l, prec, caps).unwrap().matrix;
    let b = decompose2(&swapped, prec, caps).unwrap().matrix;
    assert_eq!(b, a.transpose().map(|e| e.swap_vars()));
}

#[test]
fn diagonal_restriction_of_constant_matrix() {
    let (prec, caps) = (10, (12, 12));
    let base = RingDescriptor::new(3, 3, RingKind::Base, prec).unwrap();
    let c = |k: i64| TruncSeries2::from_terms(&base, caps, &[(0, 0, k)]);
    let m = Mat2::new(c(2), c(-1), c(5), c(3));
    let l = compose2(&m, prec, caps).unwrap();
    let log = log_matrix(3, 3, prec, caps.0).unwrap().matrix;
    let quad = log.get(0, 0).ring().clone();
    let k = |x: i64| TruncSeries1::constant(&ExtensionElement::from_i64(&quad, x), caps.0);
    let want = log.transpose().mul(&Mat2::new(k(2), k(-1), k(5), k(3))).mul(&log);
    for (a, b) in l.entries().iter().zip(want.entries()) {
        assert!(restrict_diag(a).sub(b).is_zero());
    }
}

#[test]
fn finite_levels_are_consistent_and_match_characters() {
    let base = RingDescriptor::new(3, 3, RingKind::Base, 10).unwrap();
    let mut gen = Generator::new(23);
    let s = gen.series(&base, 28, 12);
    let f = gen.series(&base, 28, 12);
    let theta = tower_from_pair(&s, &f, 3).unwrap();
    for n in 1..3u32 {
        let lo = decompose_finite(&theta[n as usize], &theta[n as usize - 1], n, 10).unwrap();
        let hi = decompose_finite(&theta[n as usize + 1], &theta[n as usize], n + 1, 10).unwrap();
        let down = [hi.pair[0].project_pi().unwrap(), hi.pair[1].project_pi().unwrap()];
        assert!(lo.agrees_on_determined(&down), "level {n}");
        assert!(lo.agrees_on_determined(&pair_at_level(&s, &f, n).unwrap()));
    }
    for xi in [Root::Alpha, Root::Beta] {
        let st = stabilize(&theta, xi).unwrap();
        for n in 1..=3u32 {
            let got = eval_character(st.level(n), n, 1).unwrap();
            let raw = eval_character(&theta[n as usize], n, 1).unwrap();
            let ring = got.ring().clone();
            let raw = Embedding::new(raw.ring(), &ring).unwrap().apply(&raw).unwrap();
            let x = xi.element(&ring).unwrap();
            let want = raw.mul(&x.inv().unwrap().pow(n as u64 + 1));
            assert!(got.sub(&want).is_zero(), "{} level {n}", xi.name());
        }
    }
}
