//! Iterative Tarjan over a dense arc predicate.

/// Strongly connected components of the digraph on `0..n` whose arcs are
/// given by `has_arc`. Components come out in reverse topological order
/// (sinks first); each component is sorted ascending.
pub fn strongly_connected_components(
    n: usize,
    has_arc: impl Fn(usize, usize) -> bool,
) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next_index = 0;
    // (vertex, next successor candidate)
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

        while let Some(&(v, start)) = call.last() {
            let mut cursor = start;
            let mut child = None;
            while cursor < n {
                let w = cursor;
                cursor += 1;
                if w == v || !has_arc(v, w) {
                    continue;
                }
                if index[w] == UNSEEN {
                    child = Some(w);
                    break;
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            }
            if let Some(frame) = call.last_mut() {
                frame.1 = cursor;
            }
            if let Some(w) = child {
                index[w] = next_index;
                low[w] = next_index;
                next_index += 1;
                stack.push(w);
                on_stack[w] = true;
                call.push((w, 0));
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
    components
}

/// `ids[v]` is the index of `v`'s component in `components`.
pub fn component_ids(n: usize, components: &[Vec<usize>]) -> Vec<usize> {
    let mut ids = vec![0; n];
    for (i, comp) in components.iter().enumerate() {
        for &v in comp {
            ids[v] = i;
        }
    }
    ids
}
