use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use super::FiniteObservationStructure;

/// A random valid structure with `behaviours` behaviours and `observations`
/// observations (both at least one).
///
/// Each `O(α)` is the downward closure of one or two random observations.
/// With `directed` it is always the downward closure of a single one, which
/// makes it directed; every finite directed structure arises this way.
pub fn random_structure<R: Rng + ?Sized>(
    rng: &mut R,
    behaviours: usize,
    observations: usize,
    directed: bool,
) -> FiniteObservationStructure {
    assert!(behaviours >= 1 && observations >= 1);
    let mut s = FiniteObservationStructure::new(
        (0..behaviours).map(|a| format!("b{a}")).collect(),
        (0..observations).map(|o| format!("o{o}")).collect(),
    );
    let density = rng.random_range(0.05..0.4);
    for o in 0..observations {
        for p in 0..observations {
            if o != p && rng.random_bool(density) {
                s.add_refine(o, p);
            }
        }
    }
    s.close_refine();
    let maximal = loop {
        // One representative per maximal class.
        let maximal: Vec<usize> = (0..observations)
            .filter(|&o| s.refinements(o).ones().all(|p| s.refines(p, o)))
            .filter(|&o| (0..o).all(|p| !(s.refines(o, p) && s.refines(p, o))))
            .collect();
        if maximal.len() <= behaviours {
            break maximal;
        }
        for &m in &maximal[behaviours..] {
            s.add_refine(m, maximal[rng.random_range(0..behaviours)]);
        }
        s.close_refine();
    };
    let mut tops: Vec<usize> = maximal;
    while tops.len() < behaviours {
        tops.push(rng.random_range(0..observations));
    }
    tops.shuffle(rng);
    for (a, &t) in tops.iter().enumerate() {
        s.add_approx(t, a);
        if !directed && rng.random_bool(0.5) {
            s.add_approx(rng.random_range(0..observations), a);
        }
    }
    s.close_approx();
    debug_assert!(s.is_valid());
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_structures_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut undirected = 0;
        for i in 0..300 {
            let nb = 1 + i % 8;
            let no = 1 + i % 10;
            let s = random_structure(&mut rng, nb, no, i % 2 == 0);
            assert!(s.is_valid(), "{s}");
            if i % 2 == 0 {
                assert!(s.is_directed(), "{s}");
            } else if !s.is_directed() {
                undirected += 1;
            }
        }
        assert!(undirected > 0);
    }

    #[test]
    fn deterministic_under_seed() {
        let a = random_structure(&mut ChaCha8Rng::seed_from_u64(3), 6, 8, false);
        let b = random_structure(&mut ChaCha8Rng::seed_from_u64(3), 6, 8, false);
        assert_eq!(a, b);
    }
}
