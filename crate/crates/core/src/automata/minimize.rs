//! Hopcroft partition refinement for total deterministic transition tables.

use alloc::vec;
use alloc::vec::Vec;

/// Coarsest partition refining `classes` that is compatible with the
/// transition table `delta[q * num_events + e]`.
///
/// Returns the block of every state and the number of blocks.
pub fn refine_partition(
    num_states: usize,
    num_events: usize,
    delta: &[usize],
    classes: &[usize],
) -> (Vec<usize>, usize) {
    if num_states == 0 {
        return (Vec::new(), 0);
    }
    // Normalise class labels to dense block ids.
    let mut block = vec![0usize; num_states];
    let mut members: Vec<Vec<usize>> = Vec::new();
    {
        let mut ids: Vec<(usize, usize)> = Vec::new();
        for q in 0..num_states {
            let id = match ids.iter().find(|(c, _)| *c == classes[q]) {
                Some(&(_, id)) => id,
                None => {
                    ids.push((classes[q], members.len()));
                    members.push(Vec::new());
                    members.len() - 1
                }
            };
            block[q] = id;
            members[id].push(q);
        }
    }

    let mut inverse: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); num_states]; num_events];
    for q in 0..num_states {
        for e in 0..num_events {
            inverse[e][delta[q * num_events + e]].push(q);
        }
    }

    let mut in_work: Vec<bool> = vec![true; members.len()];
    let mut work: Vec<usize> = (0..members.len()).collect();
    let mut marked = vec![false; num_states];

    while let Some(splitter) = work.pop() {
        in_work[splitter] = false;
        let splitter_states = members[splitter].clone();
        for e in 0..num_events {
            // X = predecessors of the splitter under e.
            let mut touched: Vec<usize> = Vec::new();
            let mut x: Vec<usize> = Vec::new();
            for &t in &splitter_states {
                for &q in &inverse[e][t] {
                    if !marked[q] {
                        marked[q] = true;
                        x.push(q);
                        if !touched.contains(&block[q]) {
                            touched.push(block[q]);
                        }
                    }
                }
            }
            for b in touched {
                let (inside, outside): (Vec<usize>, Vec<usize>) =
                    members[b].iter().partition(|&&q| marked[q]);
                if outside.is_empty() {
                    continue;
                }
                let new_id = members.len();
                let (keep, moved) =
                    if inside.len() <= outside.len() { (outside, inside) } else { (inside, outside) };
                for &q in &moved {
                    block[q] = new_id;
                }
                members[b] = keep;
                members.push(moved);
                // Queueing the moved part suffices whether or not b is queued.
                in_work.push(true);
                work.push(new_id);
            }
            for q in x {
                marked[q] = false;
            }
        }
    }
    let n = members.len();
    (block, n)
}
