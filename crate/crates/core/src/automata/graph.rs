//! Small directed-graph helpers over dense `usize` vertices.

use alloc::vec;
use alloc::vec::Vec;

/// Strongly connected components (Tarjan, iterative).
///
/// Returns the component index of every vertex; components are numbered
/// in reverse topological order (sinks first).
pub fn scc(succ: &[Vec<usize>]) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let n = succ.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut num_comps = 0;
    // (vertex, next child position)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut child)) = call.last_mut() {
            if let Some(&w) = succ[v].get(*child) {
                *child += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = num_comps;
                    if w == v {
                        break;
                    }
                }
                num_comps += 1;
            }
        }
    }
    (comp, num_comps)
}

/// Vertices from which some vertex in `targets` is reachable (including the
/// targets themselves).
pub fn backward_reachable(succ: &[Vec<usize>], targets: &[bool]) -> Vec<bool> {
    let n = succ.len();
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, ws) in succ.iter().enumerate() {
        for &w in ws {
            pred[w].push(v);
        }
    }
    let mut seen = targets.to_vec();
    let mut work: Vec<usize> = (0..n).filter(|&v| targets[v]).collect();
    while let Some(v) = work.pop() {
        for &u in &pred[v] {
            if !seen[u] {
                seen[u] = true;
                work.push(u);
            }
        }
    }
    seen
}

/// Vertices reachable from `sources` (including the sources).
pub fn forward_reachable(succ: &[Vec<usize>], sources: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; succ.len()];
    let mut work = Vec::new();
    for &s in sources {
        if !seen[s] {
            seen[s] = true;
            work.push(s);
        }
    }
    while let Some(v) = work.pop() {
        for &w in &succ[v] {
            if !seen[w] {
                seen[w] = true;
                work.push(w);
            }
        }
    }
    seen
}

/// Vertices lying on some cycle through a vertex marked in `accepting`:
/// the members of nontrivial SCCs that contain an accepting vertex.
pub fn accepting_cycle_vertices(succ: &[Vec<usize>], accepting: &[bool]) -> Vec<bool> {
    let (comp, num) = scc(succ);
    let mut size = vec![0usize; num];
    let mut has_accepting = vec![false; num];
    let mut self_loop = vec![false; num];
    for v in 0..succ.len() {
        size[comp[v]] += 1;
        has_accepting[comp[v]] |= accepting[v];
        self_loop[comp[v]] |= succ[v].contains(&v);
    }
    (0..succ.len())
        .map(|v| {
            let c = comp[v];
            has_accepting[c] && (size[c] > 1 || self_loop[c])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scc_components() {
        // 0 -> 1 -> 2 -> 1, 2 -> 3
        let g = vec![vec![1], vec![2], vec![1, 3], vec![]];
        let (comp, n) = scc(&g);
        assert_eq!(n, 3);
        assert_eq!(comp[1], comp[2]);
        assert_ne!(comp[0], comp[1]);
        assert_ne!(comp[3], comp[1]);
        // sinks first
        assert!(comp[3] < comp[1] && comp[1] < comp[0]);
    }

    #[test]
    fn accepting_cycles() {
        let g = vec![vec![1], vec![2], vec![1, 3], vec![]];
        assert_eq!(accepting_cycle_vertices(&g, &[false, true, false, false]), [false, true, true, false]);
        assert_eq!(accepting_cycle_vertices(&g, &[false, false, false, true]), [false; 4]);
        let self_loop = vec![vec![0]];
        assert_eq!(accepting_cycle_vertices(&self_loop, &[true]), [true]);
    }

    #[test]
    fn deep_chain_does_not_overflow() {
        let n = 200_000;
        let g: Vec<Vec<usize>> = (0..n).map(|i| if i + 1 < n { vec![i + 1] } else { vec![0] }).collect();
        let (_, comps) = scc(&g);
        assert_eq!(comps, 1);
    }
}
