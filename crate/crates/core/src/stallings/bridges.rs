use crate::words::Letter;

use super::graph::RegularGraph;

/// Edges whose removal (together with the inverse) disconnects the graph,
/// as `(from, positive letter, to)` in edge order. Loops are never bridges.
pub fn bridges(g: &RegularGraph) -> Vec<(usize, Letter, usize)> {
    let edges: Vec<_> = g.edges().collect();
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(u, _, v)) in edges.iter().enumerate() {
        if u != v {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
    }

    // iterative lowlink DFS; parallel edges are told apart by edge id
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_bridge = vec![false; edges.len()];
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(top) = stack.last_mut() {
            let (v, via) = (top.0, top.1);
            if top.2 < adj[v].len() {
                let (t, id) = adj[v][top.2];
                top.2 += 1;
                if id == via {
                    continue;
                }
                if disc[t] == usize::MAX {
                    disc[t] = time;
                    low[t] = time;
                    time += 1;
                    stack.push((t, id, 0));
                } else {
                    low[v] = low[v].min(disc[t]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        is_bridge[via] = true;
                    }
                }
            }
        }
    }
    edges.into_iter().zip(is_bridge).filter(|(_, b)| *b).map(|(e, _)| e).collect()
}
