//! Strongly connected components and condensation weights, shared by the
//! graph criterion and the automaton growth classifier.

/// Tarjan's algorithm, iterative. Returns `(component_of, count)`; component
/// ids are assigned in reverse topological order of the condensation, so
/// every edge `u -> v` between different components has
/// `component_of[u] > component_of[v]`.
pub(crate) fn tarjan(adj: &[Vec<usize>]) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut count = 0;
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
            if *child < adj[v].len() {
                let w = adj[v][*child];
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
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp[w] = count;
                        if w == v {
                            break;
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    (comp, count)
}

/// Cycle structure of each component of a (multi)graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ComponentShape {
    /// No cycle through the component.
    Acyclic,
    /// Exactly one cycle (a simple cycle, possibly a single self-loop).
    SingleCycle,
    /// At least two distinct cycles.
    ManyCycles,
}

/// Summary of the condensation of a multigraph.
#[derive(Debug, Clone)]
pub(crate) struct Condensation {
    pub shapes: Vec<ComponentShape>,
    /// Largest number of `SingleCycle`/`ManyCycles` components met along a
    /// single path of the condensation, starting anywhere.
    pub max_cyclic_on_path: usize,
    /// Same, but only paths that start at `from` (if given).
    pub max_cyclic_from: Option<usize>,
}

/// Condenses `adj` (parallel edges allowed, each counted once per entry).
/// `from` selects an optional start vertex for the rooted path maximum.
pub(crate) fn condense(adj: &[Vec<usize>], from: Option<usize>) -> Condensation {
    let (comp, count) = tarjan(adj);
    let mut sizes = vec![0usize; count];
    let mut inner_edges = vec![0usize; count];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (v, outs) in adj.iter().enumerate() {
        sizes[comp[v]] += 1;
        for &w in outs {
            if comp[v] == comp[w] {
                inner_edges[comp[v]] += 1;
            } else {
                succ[comp[v]].push(comp[w]);
            }
        }
    }
    let shapes: Vec<ComponentShape> = (0..count)
        .map(|c| {
            if inner_edges[c] == 0 {
                ComponentShape::Acyclic
            } else if inner_edges[c] == sizes[c] {
                ComponentShape::SingleCycle
            } else {
                ComponentShape::ManyCycles
            }
        })
        .collect();
    // successors always carry smaller ids, so ascending order is a valid DP order
    let mut best = vec![0usize; count];
    for c in 0..count {
        let own = usize::from(shapes[c] != ComponentShape::Acyclic);
        let tail = succ[c].iter().map(|&d| best[d]).max().unwrap_or(0);
        best[c] = own + tail;
    }
    Condensation {
        max_cyclic_on_path: best.iter().copied().max().unwrap_or(0),
        max_cyclic_from: from.map(|v| best[comp[v]]),
        shapes,
    }
}
