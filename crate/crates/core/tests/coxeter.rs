use std::collections::{HashMap, VecDeque};

use ctlab::coxeter::{
    is_twisted_involution, length_conjugation_law, min_double_coset, twisted_decompose, twisted_square, AffinePerm,
    DiagramInvolution,
};
use proptest::prelude::*;

/// Word length by BFS over the Cayley graph, independent of the window formula.
fn bfs_lengths(m: usize, radius: usize) -> HashMap<Vec<i64>, usize> {
    let id = AffinePerm::identity(m);
    let mut dist = HashMap::from([(id.window().to_vec(), 0)]);
    let mut queue = VecDeque::from([(id, 0)]);
    while let Some((w, d)) = queue.pop_front() {
        if d == radius {
            continue;
        }
        for i in 0..m {
            let v = w.right_mul(i);
            if !dist.contains_key(v.window()) {
                dist.insert(v.window().to_vec(), d + 1);
                queue.push_back((v, d + 1));
            }
        }
    }
    dist
}

proptest! {
    #[test]
    fn length_matches_bfs(word in prop::collection::vec(0usize..5, 0..=6)) {
        let w = AffinePerm::from_word(5, &word);
        let table = bfs_lengths(5, 6);
        prop_assert_eq!(w.length(), table[w.window()]);
        prop_assert_eq!(w.inverse().length(), w.length());
    }

    #[test]
    fn theta_preserves_length_and_squares_are_twisted(word in prop::collection::vec(0usize..8, 0..=5)) {
        let th = DiagramInvolution::new(8, 4).unwrap();
        let w = AffinePerm::from_word(8, &word);
        prop_assert_eq!(th.apply(&w).length(), w.length());
        prop_assert_eq!(th.apply(&th.apply(&w)), w.clone());
        let u = twisted_square(&w, &th);
        prop_assert!(is_twisted_involution(&u, &th));
        prop_assert_eq!(u.length() % 2, 0);
        for i in 0..8 {
            let d = length_conjugation_law(&u, i, &th).unwrap();
            prop_assert!(d == 2 || d == -2);
        }
        let dec = twisted_decompose(&u, &th).unwrap();
        prop_assert_eq!(twisted_square(&dec.w, &th), u.clone());
        prop_assert_eq!(2 * dec.w.length(), u.length());
    }
}

#[test]
fn small_examples() {
    let s1 = AffinePerm::generator(4, 1);
    assert_eq!(s1.length(), 1);
    assert_eq!(AffinePerm::identity(4).length(), 0);
    let th = DiagramInvolution::new(4, 2).unwrap();
    let u = AffinePerm::from_word(4, &[1, 3]);
    assert!(is_twisted_involution(&u, &th));
    assert!(!is_twisted_involution(&s1, &th));
    assert_eq!(twisted_decompose(&u, &th).unwrap().w, s1);
    assert_eq!(length_conjugation_law(&AffinePerm::identity(4), 0, &th).unwrap(), 2);
    let th8 = DiagramInvolution::new(8, 4).unwrap();
    let u = AffinePerm::from_word(8, &[1, 5]);
    assert!(min_double_coset(&u, &[1, 5], &th8).is_identity());
}
