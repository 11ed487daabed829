//! Small directed-graph utilities on adjacency lists indexed `0..n`.

use std::collections::VecDeque;

/// Strongly connected components of the subgraph induced by `active`
/// (all nodes when `None`), via an iterative Tarjan traversal.
///
/// Components come out in reverse topological order of the condensation:
/// a component is emitted only after every component it can reach. Nodes
/// inside a component are sorted.
pub fn strongly_connected_components(adj: &[Vec<usize>], active: Option<&[bool]>) -> Vec<Vec<usize>> {
    let n = adj.len();
    let on = |v: usize| active.is_none_or(|a| a[v]);
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut next = 0usize;
    // (node, position of the next successor to look at)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if !on(root) || index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if !on(w) {
                    continue;
                }
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}

/// Component id per node (`usize::MAX` for inactive nodes).
pub fn component_ids(n: usize, comps: &[Vec<usize>]) -> Vec<usize> {
    let mut id = vec![usize::MAX; n];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            id[v] = c;
        }
    }
    id
}

/// Whether the component has at least one internal edge
/// (always true for components of size > 1).
pub fn is_nontrivial(adj: &[Vec<usize>], comp: &[usize]) -> bool {
    comp.len() > 1 || adj[comp[0]].contains(&comp[0])
}

/// Reverse adjacency.
pub fn transpose(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut rev = vec![Vec::new(); adj.len()];
    for (v, succ) in adj.iter().enumerate() {
        for &w in succ {
            rev[w].push(v);
        }
    }
    rev
}

/// Nodes that can reach `targets` using only nodes allowed by `through`
/// as intermediate steps (targets themselves are always included).
pub fn backward_reachable(adj: &[Vec<usize>], targets: &[bool], through: &[bool]) -> Vec<bool> {
    let rev = transpose(adj);
    let mut seen = targets.to_vec();
    let mut queue: VecDeque<usize> = (0..adj.len()).filter(|&v| targets[v]).collect();
    while let Some(w) = queue.pop_front() {
        for &v in &rev[w] {
            if !seen[v] && through[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Nodes reachable from `start`.
pub fn forward_reachable(adj: &[Vec<usize>], start: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::new();
    for &s in start {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reach(adj: &[Vec<usize>], a: usize, b: usize) -> bool {
        forward_reachable(adj, &[a])[b]
    }

    #[test]
    fn reverse_topological_order() {
        // 0 -> 1 <-> 2 -> 3, 3 self-loop, 4 isolated
        let adj = vec![vec![1], vec![2], vec![1, 3], vec![3], vec![]];
        let comps = strongly_connected_components(&adj, None);
        assert_eq!(comps, vec![vec![3], vec![1, 2], vec![0], vec![4]]);
        assert!(is_nontrivial(&adj, &[3]));
        assert!(!is_nontrivial(&adj, &[0]));
    }

    #[test]
    fn restricted_subgraph() {
        let adj = vec![vec![1], vec![2], vec![0]];
        let active = [true, false, true];
        let comps = strongly_connected_components(&adj, Some(&active));
        assert_eq!(comps, vec![vec![0], vec![2]]);
    }

    #[test]
    fn agrees_with_mutual_reachability() {
        // deterministic pseudo-random graphs
        let mut state = 12345u64;
        let mut rnd = |m: u64| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % m
        };
        for _ in 0..200 {
            let n = 1 + rnd(8) as usize;
            let adj: Vec<Vec<usize>> = (0..n)
                .map(|_| {
                    let mut s: Vec<usize> = (0..rnd(3)).map(|_| rnd(n as u64) as usize).collect();
                    s.sort_unstable();
                    s.dedup();
                    s
                })
                .collect();
            let comps = strongly_connected_components(&adj, None);
            let id = component_ids(n, &comps);
            for a in 0..n {
                for b in 0..n {
                    let same = reach(&adj, a, b) && reach(&adj, b, a);
                    assert_eq!(same, id[a] == id[b]);
                    // emitted order: if a reaches b in another component, b's comes first
                    if reach(&adj, a, b) && id[a] != id[b] {
                        assert!(id[b] < id[a]);
                    }
                }
            }
        }
    }

    #[test]
    fn backward_reachability_respects_barrier() {
        let adj = vec![vec![1], vec![2], vec![2]];
        let targets = [false, false, true];
        let through = [true, false, true];
        assert_eq!(backward_reachable(&adj, &targets, &through), vec![false, false, true]);
        let all = [true; 3];
        assert_eq!(backward_reachable(&adj, &targets, &all), vec![true, true, true]);
    }
}
