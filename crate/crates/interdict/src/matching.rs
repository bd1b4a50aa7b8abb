//! Matching primitives: maximum matching value and minimum maximal
//! matching size, with deterministic certificates.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{EdgeId, VertexId, WeightedGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("weighted matching enumeration capped at {cap} edges, got {edges}")]
    CapExceeded { edges: usize, cap: usize },
}

/// Edge cap for the exhaustive weighted-matching fallback.
pub const WEIGHTED_ENUM_CAP: usize = 20;

const NONE: usize = usize::MAX;

/// Maximum matching value of `g`.
///
/// Unit-weight graphs get an exact cardinality matching: augmenting-path
/// search on bipartite inputs, blossom contraction otherwise. Anything
/// with non-unit weights falls back to exhaustive enumeration of the
/// maximum total weight, capped at [`WEIGHTED_ENUM_CAP`] edges.
pub fn max_matching(g: &WeightedGraph) -> Result<u64, MatchingError> {
    if g.has_unit_weights() {
        Ok(max_cardinality_matching(g).0 as u64)
    } else {
        max_weight_matching_exhaustive(g)
    }
}

/// Maximum cardinality matching; returns the size and, for each vertex
/// slot `v-1`, its partner.
pub fn max_cardinality_matching(g: &WeightedGraph) -> (usize, Vec<Option<VertexId>>) {
    let mate = if g.two_color().is_ok() {
        bipartite_matching(g)
    } else {
        blossom_matching(g)
    };
    let size = mate.iter().filter(|m| m.is_some()).count() / 2;
    (size, mate)
}

/// Kuhn's augmenting-path search. Assumes the graph is bipartite.
fn bipartite_matching(g: &WeightedGraph) -> Vec<Option<VertexId>> {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let left: Vec<usize> = match g.bipartition_or_computed() {
        Ok(side) => side.iter().map(|&v| v as usize - 1).collect(),
        Err(_) => unreachable!("caller checked bipartiteness"),
    };
    let mut mate = vec![NONE; n];

    fn try_augment(
        x: usize,
        adj: &[Vec<(VertexId, EdgeId)>],
        mate: &mut [usize],
        seen: &mut [bool],
    ) -> bool {
        for &(nb, _) in &adj[x] {
            let y = nb as usize - 1;
            if seen[y] {
                continue;
            }
            seen[y] = true;
            if mate[y] == NONE || try_augment(mate[y], adj, mate, seen) {
                mate[y] = x;
                mate[x] = y;
                return true;
            }
        }
        false
    }

    for &x in &left {
        if mate[x] == NONE {
            let mut seen = vec![false; n];
            try_augment(x, &adj, &mut mate, &mut seen);
        }
    }
    mate.iter()
        .map(|&m| if m == NONE { None } else { Some(m as VertexId + 1) })
        .collect()
}

/// Maximum cardinality matching in a general graph by blossom
/// contraction.
fn blossom_matching(g: &WeightedGraph) -> Vec<Option<VertexId>> {
    let n = g.vertex_count();
    let adj: Vec<Vec<usize>> = g
        .adjacency()
        .into_iter()
        .map(|row| row.into_iter().map(|(nb, _)| nb as usize - 1).collect())
        .collect();
    let mut mate = vec![NONE; n];
    for root in 0..n {
        if mate[root] == NONE {
            augment_from(root, &adj, &mut mate);
        }
    }
    mate.iter()
        .map(|&m| if m == NONE { None } else { Some(m as VertexId + 1) })
        .collect()
}

fn blossom_lca(mate: &[usize], base: &[usize], parent: &[usize], a: usize, b: usize) -> usize {
    let mut on_path = vec![false; base.len()];
    let mut a = a;
    loop {
        a = base[a];
        on_path[a] = true;
        if mate[a] == NONE {
            break;
        }
        a = parent[mate[a]];
    }
    let mut b = b;
    loop {
        b = base[b];
        if on_path[b] {
            return b;
        }
        b = parent[mate[b]];
    }
}

fn mark_blossom(
    mate: &[usize],
    base: &[usize],
    parent: &mut [usize],
    in_blossom: &mut [bool],
    mut v: usize,
    stem: usize,
    mut child: usize,
) {
    while base[v] != stem {
        in_blossom[base[v]] = true;
        in_blossom[base[mate[v]]] = true;
        parent[v] = child;
        child = mate[v];
        v = parent[mate[v]];
    }
}

fn augment_from(root: usize, adj: &[Vec<usize>], mate: &mut [usize]) -> bool {
    let n = adj.len();
    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut in_tree = vec![false; n];
    in_tree[root] = true;
    let mut queue = VecDeque::from([root]);

    while let Some(v) = queue.pop_front() {
        for &to in &adj[v] {
            if base[v] == base[to] || mate[v] == to {
                continue;
            }
            if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                // Odd cycle: contract the blossom around the stem.
                let stem = blossom_lca(mate, &base, &parent, v, to);
                let mut in_blossom = vec![false; n];
                mark_blossom(mate, &base, &mut parent, &mut in_blossom, v, stem, to);
                mark_blossom(mate, &base, &mut parent, &mut in_blossom, to, stem, v);
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = stem;
                        if !in_tree[i] {
                            in_tree[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to] == NONE {
                parent[to] = v;
                if mate[to] == NONE {
                    // Alternate along the tree path to enlarge the matching.
                    let mut u = to;
                    while u != NONE {
                        let pv = parent[u];
                        let next = mate[pv];
                        mate[u] = pv;
                        mate[pv] = u;
                        u = next;
                    }
                    return true;
                } else {
                    in_tree[mate[to]] = true;
                    queue.push_back(mate[to]);
                }
            }
        }
    }
    false
}

/// Exhaustive maximum-weight matching, used as the general-weight
/// fallback and nowhere else.
pub fn max_weight_matching_exhaustive(g: &WeightedGraph) -> Result<u64, MatchingError> {
    if g.edge_count() > WEIGHTED_ENUM_CAP {
        return Err(MatchingError::CapExceeded { edges: g.edge_count(), cap: WEIGHTED_ENUM_CAP });
    }
    fn go(g: &WeightedGraph, i: usize, used: &mut [bool], acc: u64, best: &mut u64) {
        if acc > *best {
            *best = acc;
        }
        if i == g.edge_count() {
            return;
        }
        // Bound: everything left could still be taken.
        let rest: u64 = (i..g.edge_count()).map(|j| g.edge(j).weight).sum();
        if acc + rest <= *best {
            return;
        }
        let e = g.edge(i);
        let (a, b) = (e.u as usize - 1, e.v as usize - 1);
        if !used[a] && !used[b] {
            used[a] = true;
            used[b] = true;
            go(g, i + 1, used, acc + e.weight, best);
            used[a] = false;
            used[b] = false;
        }
        go(g, i + 1, used, acc, best);
    }
    let mut best = 0;
    let mut used = vec![false; g.vertex_count()];
    go(g, 0, &mut used, 0, &mut best);
    Ok(best)
}

/// Minimum maximal matching: the smallest matching that dominates every
/// edge. Size-based; edge weights are not consulted. Returns the size and
/// the lexicographically least witness of that size.
pub fn min_maximal_matching(g: &WeightedGraph) -> (usize, Vec<EdgeId>) {
    let n = g.vertex_count();
    // Greedy maximal matching as the initial upper bound.
    let mut matched = vec![false; n];
    let mut greedy = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        let (a, b) = (e.u as usize - 1, e.v as usize - 1);
        if !matched[a] && !matched[b] {
            matched[a] = true;
            matched[b] = true;
            greedy.push(i);
        }
    }
    let mut best = (greedy.len(), greedy);
    let mut matched = vec![false; n];
    let mut current = Vec::new();
    search_maximal(g, &mut matched, &mut current, &mut best);
    best.1.sort_unstable();
    best
}

fn search_maximal(
    g: &WeightedGraph,
    matched: &mut Vec<bool>,
    current: &mut Vec<EdgeId>,
    best: &mut (usize, Vec<EdgeId>),
) {
    // First edge whose endpoints are both free; any maximal extension must
    // match one of them.
    let open = g.edges().iter().enumerate().find(|(_, e)| {
        !matched[e.u as usize - 1] && !matched[e.v as usize - 1]
    });
    let Some((_, pivot)) = open else {
        let mut cert = current.clone();
        cert.sort_unstable();
        if current.len() < best.0 || (current.len() == best.0 && cert < best.1) {
            *best = (current.len(), cert);
        }
        return;
    };
    if current.len() + 1 > best.0 {
        return;
    }
    for (i, e) in g.edges().iter().enumerate() {
        let (a, b) = (e.u as usize - 1, e.v as usize - 1);
        if matched[a] || matched[b] {
            continue;
        }
        if !e.shares_endpoint(pivot) {
            continue;
        }
        matched[a] = true;
        matched[b] = true;
        current.push(i);
        search_maximal(g, matched, current, best);
        current.pop();
        matched[a] = false;
        matched[b] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;

    fn cycle(n: usize) -> WeightedGraph {
        let mut pairs: Vec<_> = (1..n as u32).map(|i| (i, i + 1)).collect();
        pairs.push((n as u32, 1));
        WeightedGraph::unit(n, &pairs).unwrap()
    }

    fn complete(n: usize) -> WeightedGraph {
        let mut pairs = Vec::new();
        for u in 1..=n as u32 {
            for v in (u + 1)..=n as u32 {
                pairs.push((u, v));
            }
        }
        WeightedGraph::unit(n, &pairs).unwrap()
    }

    fn petersen() -> WeightedGraph {
        let mut pairs = vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)];
        pairs.extend([(6, 8), (8, 10), (10, 7), (7, 9), (9, 6)]);
        pairs.extend((1..=5).map(|i| (i, i + 5)));
        WeightedGraph::unit(10, &pairs).unwrap()
    }

    /// Independent test oracle: exhaustive search over matchings.
    fn enumerate_max_cardinality(g: &WeightedGraph) -> usize {
        fn go(g: &WeightedGraph, i: usize, used: &mut [bool], size: usize, best: &mut usize) {
            *best = (*best).max(size);
            if i == g.edge_count() {
                return;
            }
            let e = g.edge(i);
            let (a, b) = (e.u as usize - 1, e.v as usize - 1);
            if !used[a] && !used[b] {
                used[a] = true;
                used[b] = true;
                go(g, i + 1, used, size + 1, best);
                used[a] = false;
                used[b] = false;
            }
            go(g, i + 1, used, size, best);
        }
        let mut best = 0;
        go(g, 0, &mut vec![false; g.vertex_count()], 0, &mut best);
        best
    }

    /// Independent test oracle: minimum independent edge dominating set by
    /// brute force over edge subsets.
    fn enumerate_min_maximal(g: &WeightedGraph) -> usize {
        let m = g.edge_count();
        let mut best = usize::MAX;
        for mask in 0u32..(1 << m) {
            let ids: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
            let independent = ids
                .iter()
                .all(|&i| ids.iter().all(|&j| i == j || !g.edge(i).shares_endpoint(g.edge(j))));
            if !independent {
                continue;
            }
            let dominating = (0..m).all(|f| {
                ids.contains(&f) || ids.iter().any(|&i| g.edge(i).shares_endpoint(g.edge(f)))
            });
            if dominating {
                best = best.min(ids.len());
            }
        }
        best
    }

    #[test]
    fn square_matches_twice() {
        assert_eq!(max_matching(&cycle(4)).unwrap(), 2);
    }

    #[test]
    fn triangle_matches_once() {
        assert_eq!(max_matching(&complete(3)).unwrap(), 1);
    }

    #[test]
    fn petersen_has_perfect_matching() {
        let g = petersen();
        assert_eq!(enumerate_max_cardinality(&g), 5);
        assert_eq!(max_matching(&g).unwrap(), 5);
    }

    #[test]
    fn blossom_agrees_with_enumeration_on_odd_structures() {
        // Two triangles sharing a vertex, plus a pendant.
        let g = WeightedGraph::unit(
            6,
            &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5), (5, 6)],
        )
        .unwrap();
        assert_eq!(max_matching(&g).unwrap() as usize, enumerate_max_cardinality(&g));
    }

    #[test]
    fn weighted_fallback_maximizes_total_weight() {
        // A heavy edge beats two light ones that exclude it.
        let g = WeightedGraph::new(
            4,
            vec![(1, 2, 2, 1), (2, 3, 5, 1), (3, 4, 2, 1)],
            None,
        )
        .unwrap();
        assert_eq!(max_matching(&g).unwrap(), 5);
    }

    #[test]
    fn weighted_fallback_honors_cap() {
        let pairs: Vec<_> = (1..=21).map(|i| (i, i + 1)).collect();
        let g = WeightedGraph::new(
            22,
            pairs.into_iter().map(|(u, v)| (u, v, 2, 1)).collect(),
            None,
        )
        .unwrap();
        assert!(max_matching(&g).is_err());
    }

    #[test]
    fn middle_edge_alone_is_maximal_in_path() {
        let g = WeightedGraph::unit(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        let (size, cert) = min_maximal_matching(&g);
        assert_eq!(size, 1);
        assert_eq!(cert, vec![g.find_edge(2, 3).unwrap()]);
    }

    #[test]
    fn square_needs_two_for_maximality() {
        assert_eq!(min_maximal_matching(&cycle(4)).0, 2);
        assert_eq!(enumerate_min_maximal(&cycle(4)), 2);
    }

    #[test]
    fn complete_four_needs_two() {
        assert_eq!(min_maximal_matching(&complete(4)).0, 2);
        assert_eq!(enumerate_min_maximal(&complete(4)), 2);
    }

    #[test]
    fn min_maximal_matches_brute_force_on_small_graphs() {
        let samples = [
            WeightedGraph::unit(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 3)]).unwrap(),
            WeightedGraph::unit(6, &[(1, 4), (2, 5), (3, 6), (1, 5), (2, 6)]).unwrap(),
            WeightedGraph::unit(4, &[]).unwrap(),
            complete(5),
        ];
        for g in samples {
            assert_eq!(min_maximal_matching(&g).0, enumerate_min_maximal(&g));
        }
    }
}
