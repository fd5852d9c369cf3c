//! Greedy starting solution via 2-exchange descent.

use crate::problem::{Instance, Permutation};

/// Starting from the identity ordering, repeatedly applies the best strictly
/// improving swap of two positions until the ordering is 2-exchange optimal.
/// Ties on the objective gain are broken toward the lexicographically
/// smallest position pair, so the result is deterministic.
pub fn greedy_initial(instance: &Instance) -> Permutation {
    let n = instance.n();
    let mut perm = Permutation::identity(n);
    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        for a in 0..n {
            for b in a + 1..n {
                let delta = instance
                    .swap_delta(&perm, a, b)
                    .expect("swap positions are in range");
                if delta > 0.0 && best.is_none_or(|(d, _, _)| delta > d) {
                    best = Some((delta, a, b));
                }
            }
        }
        match best {
            Some((_, a, b)) => perm
                .swap_positions(a, b)
                .expect("swap positions are in range"),
            None => return perm,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::generate_random_instance;
    use crate::problem::Instance;

    #[test]
    fn single_object() {
        let inst = Instance::new(vec![vec![0.0]]).unwrap();
        assert_eq!(greedy_initial(&inst).as_slice(), &[0]);
    }

    #[test]
    fn two_objects_pick_the_better_order() {
        let inst = Instance::new(vec![vec![0.0, 3.0], vec![5.0, 0.0]]).unwrap();
        let perm = greedy_initial(&inst);
        assert_eq!(perm.as_slice(), &[1, 0]);
        assert_eq!(inst.objective(&perm).unwrap(), 5.0);
    }

    #[test]
    fn result_is_a_two_exchange_local_optimum() {
        for seed in 0..10 {
            let inst = generate_random_instance(7, 0, 99, seed).unwrap();
            let perm = greedy_initial(&inst);
            let identity_value = inst.objective(&Permutation::identity(7)).unwrap();
            assert!(inst.objective(&perm).unwrap() >= identity_value);
            for a in 0..7 {
                for b in a + 1..7 {
                    let delta = inst.swap_delta(&perm, a, b).unwrap();
                    assert!(
                        delta <= 0.0,
                        "seed {seed}: improving swap ({a}, {b}) left, delta {delta}"
                    );
                }
            }
        }
    }

    #[test]
    fn deterministic_per_instance() {
        let inst = generate_random_instance(9, -10, 42, 5).unwrap();
        assert_eq!(greedy_initial(&inst), greedy_initial(&inst));
    }
}
