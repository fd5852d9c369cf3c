//! Best-improvement insert-move descent.

use crate::problem::{Instance, Permutation};

/// Polishes a permutation by repeatedly applying the best strictly improving
/// insert move. Each pass scans every `(from, to)` pair; the delta for a
/// fixed `from` accumulates one sign-flip term per jumped element, so a full
/// pass costs O(n^2). Stops at an insert-optimal ordering or after
/// `max_passes` passes, whichever comes first. Callers without a better
/// budget in mind use `n * n` passes, which descent never exhausts in
/// practice.
pub fn insert_move_search(
    instance: &Instance,
    perm: &Permutation,
    max_passes: usize,
) -> Permutation {
    let n = instance.n();
    let mut current = perm.clone();
    for _ in 0..max_passes {
        let mut best: Option<(f64, usize, usize)> = None;
        let ord = current.as_slice();
        for from in 0..n {
            let x = ord[from];
            let mut delta = 0.0;
            for (to, &y) in ord.iter().enumerate().skip(from + 1) {
                delta += instance.weight(y, x) - instance.weight(x, y);
                consider(&mut best, delta, from, to);
            }
            delta = 0.0;
            for to in (0..from).rev() {
                let y = ord[to];
                delta += instance.weight(x, y) - instance.weight(y, x);
                consider(&mut best, delta, from, to);
            }
        }
        match best {
            Some((_, from, to)) => {
                current = current
                    .apply_insert(from, to)
                    .expect("insert positions are in range");
            }
            None => break,
        }
    }
    current
}

/// Keeps the strictly improving move with the largest delta, ties broken
/// toward the lexicographically smallest `(from, to)`.
fn consider(best: &mut Option<(f64, usize, usize)>, delta: f64, from: usize, to: usize) {
    if delta <= 0.0 {
        return;
    }
    let replace = match *best {
        None => true,
        Some((d, f, t)) => delta > d || (delta == d && (from, to) < (f, t)),
    };
    if replace {
        *best = Some((delta, from, to));
    }
}
