use arfold::rootsys::{DynkinType, RootId, RootSystem};
use arfold::seqorder::{bilex_less, same_weight_sequences, ClassAnalysis, CoverKind, SequenceVector};
use arfold::words::{root_sequence, twisted_adapted_point, CommutationClass, DEFAULT_CAP};

struct Brute {
    words: Vec<Vec<RootId>>,
}

impl Brute {
    fn new(rs: &RootSystem, class: &CommutationClass) -> Self {
        let words = class
            .members(rs, DEFAULT_CAP)
            .unwrap()
            .iter()
            .map(|w| root_sequence(rs, w).unwrap())
            .collect();
        Brute { words }
    }

    fn less(&self, m: &SequenceVector, mp: &SequenceVector) -> bool {
        m != mp && self.words.iter().all(|w| bilex_less(w, m, mp))
    }

    /// Maximal sequences strictly below `p`, over every sequence of its weight.
    fn covers(&self, rs: &RootSystem, p: &SequenceVector) -> Vec<SequenceVector> {
        let all = same_weight_sequences(rs, &p.weight(rs), rs.all_roots(), DEFAULT_CAP).unwrap();
        let below: Vec<&SequenceVector> = all.iter().filter(|x| self.less(x, p)).collect();
        let mut out: Vec<SequenceVector> = below
            .iter()
            .filter(|x| !below.iter().any(|y| self.less(x, y)))
            .map(|x| (*x).clone())
            .collect();
        out.sort();
        out
    }
}

/// Every cover of every non-simple pair in every class, with its kind and
/// the pair ordered `alpha` before `beta`.
fn all_covers(rs: &RootSystem) -> Vec<(CommutationClass, RootId, RootId, SequenceVector, CoverKind)> {
    let point = twisted_adapted_point(rs).unwrap();
    let mut out = Vec::new();
    for class in point.iter() {
        let mut an = ClassAnalysis::new(rs, class, DEFAULT_CAP);
        for a in 0..rs.num_positive() {
            for b in a + 1..rs.num_positive() {
                if an.pair_dist(a, b).unwrap() == Some(0) {
                    continue;
                }
                let (alpha, beta) = if an.order().precedes(a, b) { (a, b) } else { (b, a) };
                for c in an.classify_cover(a, b).unwrap() {
                    out.push((class.clone(), alpha, beta, c.cover, c.kind));
                }
            }
        }
    }
    out
}

#[test]
fn sum_cover_at_a5() {
    let rs = RootSystem::new(DynkinType::A, 5).unwrap();
    let covers = all_covers(&rs);
    let (class, alpha, beta, m, _) = covers.iter().find(|c| c.4 == CoverKind::Sum).unwrap();
    let g = rs.add(*alpha, *beta).unwrap();
    assert_eq!(*m, SequenceVector::single(g));
    let brute = Brute::new(&rs, class);
    let p = SequenceVector::pair(*alpha, *beta);
    assert_eq!(brute.covers(&rs, &p), vec![m.clone()]);
    // no other sequence of weight g sits between alpha and beta around g
    let mut an = ClassAnalysis::new(&rs, class, DEFAULT_CAP);
    assert!(an.minimal_pairs(g).contains(&(*alpha, *beta)));
}

#[test]
fn shift_cover_at_d5() {
    let rs = RootSystem::new(DynkinType::D, 5).unwrap();
    let covers = all_covers(&rs);
    let (class, alpha, beta, m, kind) = covers
        .iter()
        .find(|c| matches!(c.4, CoverKind::ShiftOut { .. }) && rs.add(c.1, c.2).is_none())
        .unwrap();
    let CoverKind::ShiftOut { alpha2, beta2 } = *kind else { unreachable!() };
    assert!(rs.sub(alpha2, *alpha).is_some() && rs.sub(*beta, beta2).is_some());
    let brute = Brute::new(&rs, class);
    assert!(brute.covers(&rs, &SequenceVector::pair(*alpha, *beta)).contains(m));
}

#[test]
fn triple_cover_at_a5() {
    let rs = RootSystem::new(DynkinType::A, 5).unwrap();
    let covers = all_covers(&rs);
    let (class, alpha, beta, m, kind) = covers
        .iter()
        .find(|c| matches!(c.4, CoverKind::Triple { strict: true, .. }))
        .unwrap();
    let CoverKind::Triple { mu, nu, eta, .. } = *kind else { unreachable!() };
    let mut an = ClassAnalysis::new(&rs, class, DEFAULT_CAP);
    let am = rs.sub(*alpha, mu).unwrap();
    let bn = rs.sub(*beta, nu).unwrap();
    assert!(rs.add(*alpha, *beta).is_none());
    assert!(rs.add(mu, nu).is_some() && an.is_minimal_pair(mu, nu));
    assert!(!an.order().comparable(eta, mu) && !an.order().comparable(eta, nu));
    assert_eq!(rs.add(am, bn), Some(eta));
    assert!(an.is_minimal_pair(am, bn));
    assert!(an.is_minimal_pair(am, mu) && an.is_minimal_pair(nu, bn));
    assert_eq!(an.pair_dist(*alpha, *beta).unwrap(), Some(2));
    let brute = Brute::new(&rs, class);
    assert!(brute.covers(&rs, &SequenceVector::pair(*alpha, *beta)).contains(m));
}

#[test]
fn covers_agree_with_brute_force_at_a5() {
    let rs = RootSystem::new(DynkinType::A, 5).unwrap();
    let point = twisted_adapted_point(&rs).unwrap();
    for class in point.iter().take(4) {
        let brute = Brute::new(&rs, class);
        let mut an = ClassAnalysis::new(&rs, class, DEFAULT_CAP);
        for a in 0..rs.num_positive() {
            for b in a + 1..rs.num_positive() {
                let mut ours = an.analyse_pair(a, b).unwrap().covers;
                ours.sort();
                assert_eq!(ours, brute.covers(&rs, &SequenceVector::pair(a, b)));
            }
        }
    }
}

#[test]
fn cover_with_a_simple_root_is_a_triple_outside_the_listed_cases() {
    let rs = RootSystem::new(DynkinType::A, 5).unwrap();
    let w = [1, 3, 2, 1, 3, 5, 4, 3, 2, 1, 3, 5, 4, 3, 2];
    let class = CommutationClass::of_longest(&rs, &w).unwrap();
    let alpha = rs.parse_root("01111").unwrap();
    let beta = rs.parse_root("00010").unwrap();
    let mut an = ClassAnalysis::new(&rs, &class, DEFAULT_CAP);
    assert!(an.order().precedes(alpha, beta));
    assert_eq!(an.pair_dist(alpha, beta).unwrap(), Some(2));
    let covers = an.classify_cover(alpha, beta).unwrap();
    assert_eq!(covers.len(), 1);
    assert_eq!(covers[0].cover.display(&rs), "(01000, 00011, 00110)");
    assert_eq!(covers[0].kind, CoverKind::Unclassified);
}

#[test]
fn dist_two_pair_has_one_chain() {
    let rs = RootSystem::new(DynkinType::A, 3).unwrap();
    let point = twisted_adapted_point(&rs).unwrap();
    let mut seen = 0;
    for class in point.iter() {
        let brute = Brute::new(&rs, class);
        let mut an = ClassAnalysis::new(&rs, class, DEFAULT_CAP);
        for a in 0..rs.num_positive() {
            for b in a + 1..rs.num_positive() {
                let rep = an.analyse_pair(a, b).unwrap();
                if rep.dist != Some(2) {
                    continue;
                }
                seen += 1;
                assert_eq!(rep.middle_chains.len(), 1);
                let (s, mid) = &rep.middle_chains[0];
                let p = SequenceVector::pair(a, b);
                assert!(brute.less(s, mid) && brute.less(mid, &p));
                assert_eq!(brute.covers(&rs, &p), vec![mid.clone()]);
                assert_eq!(brute.covers(&rs, mid), vec![s.clone()]);
            }
        }
    }
    assert_eq!(seen, 4);
}
