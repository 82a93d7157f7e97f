//! Strongly connected components of dense digraphs.

/// Tarjan's algorithm over a dense digraph on `0..n` given by an edge
/// predicate. Runs in O(n²) predicate calls.
///
/// Components are returned in topological order of the condensation: no edge
/// leads from a later component into an earlier one, so `components[0]` is a
/// source component. Vertices inside a component are sorted ascending.
pub fn strongly_connected_components(
    n: usize,
    edge: impl Fn(usize, usize) -> bool,
) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    // (vertex, next neighbour to try)
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut components = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            let mut descended = false;
            while *next < n {
                let w = *next;
                *next += 1;
                if w == v || !edge(v, w) {
                    continue;
                }
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                    descended = true;
                    break;
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            }
            if descended {
                continue;
            }
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
                components.push(comp);
            }
        }
    }
    // Tarjan emits sink components first.
    components.reverse();
    components
}

/// `true` iff the digraph on `0..n` is strongly connected.
pub fn is_strongly_connected(n: usize, edge: impl Fn(usize, usize) -> bool) -> bool {
    n <= 1 || strongly_connected_components(n, edge).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_edges(n: usize, edges: &[(usize, usize)]) -> impl Fn(usize, usize) -> bool {
        let mut adj = vec![false; n * n];
        for &(a, b) in edges {
            adj[a * n + b] = true;
        }
        move |a, b| adj[a * n + b]
    }

    #[test]
    fn two_cycles_joined_by_a_bridge() {
        let g = from_edges(5, &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 4), (4, 2)]);
        let comps = strongly_connected_components(5, g);
        assert_eq!(comps, vec![vec![0, 1], vec![2, 3, 4]]);
    }

    #[test]
    fn dag_gives_singletons_in_topological_order() {
        let g = from_edges(4, &[(3, 1), (1, 2), (2, 0)]);
        assert_eq!(
            strongly_connected_components(4, g),
            vec![vec![3], vec![1], vec![2], vec![0]]
        );
    }

    #[test]
    fn strong_connectivity() {
        assert!(is_strongly_connected(
            3,
            from_edges(3, &[(0, 1), (1, 2), (2, 0)])
        ));
        assert!(!is_strongly_connected(
            3,
            from_edges(3, &[(0, 1), (1, 2), (0, 2)])
        ));
        assert!(is_strongly_connected(0, |_, _| false));
    }
}
