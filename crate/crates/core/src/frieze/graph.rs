use crate::subset::{Shape, Subset};

/// Edge `I -- J` of the fundamental domain, where `J` is `I` with `step`
/// replaced by `step + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DomainEdge {
    pub lower: Subset,
    pub upper: Subset,
    pub step: usize,
}

/// Edges wherever `I \ {i} = J \ {i+1}` for some `1 <= i < n` and `I != J`,
/// ordered by `(lower, upper)`.
pub fn fundamental_domain_graph(shape: Shape) -> Vec<DomainEdge> {
    let n = shape.n();
    let mut edges = Vec::new();
    for lower in shape.subsets() {
        for step in 1..n {
            if lower.contains(step) && !lower.contains(step + 1) {
                edges.push(DomainEdge {
                    lower,
                    upper: lower.without(step).with(step + 1),
                    step,
                });
            }
        }
    }
    edges.sort();
    edges
}

/// A finite stretch of the layered underlying graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredGraph {
    pub copies: usize,
    /// `(subset, layer)` in layer-major, then lex order.
    pub nodes: Vec<(Subset, usize)>,
    /// Edges inside one layer, as `(edge, layer)`.
    pub inner: Vec<(DomainEdge, usize)>,
    /// `((I, m), (J, m + 1))` with `I \ {n} = J \ {1}`.
    pub cross: Vec<((Subset, usize), (Subset, usize))>,
}

impl LayeredGraph {
    pub fn edge_count(&self) -> usize {
        self.inner.len() + self.cross.len()
    }

    pub fn adjacent(&self, a: (Subset, usize), b: (Subset, usize)) -> bool {
        self.inner.iter().any(|&(e, m)| {
            let pair = ((e.lower, m), (e.upper, m));
            pair == (a, b) || pair == (b, a)
        }) || self.cross.iter().any(|&pair| pair == (a, b) || pair == (b, a))
    }
}

/// Layers `0..copies` of the fundamental domain joined by the wrap-around
/// edges. A cross edge moves the element `n` of `I` to the element `1` of the
/// next layer.
pub fn underlying_graph_window(shape: Shape, copies: usize) -> LayeredGraph {
    let n = shape.n();
    let subsets = shape.subsets();
    let domain = fundamental_domain_graph(shape);
    let mut nodes = Vec::new();
    let mut inner = Vec::new();
    let mut cross = Vec::new();
    for layer in 0..copies {
        nodes.extend(subsets.iter().map(|&s| (s, layer)));
        inner.extend(domain.iter().map(|&e| (e, layer)));
        if layer + 1 < copies {
            for &s in &subsets {
                if s.contains(n) && !s.contains(1) {
                    cross.push(((s, layer), (s.without(n).with(1), layer + 1)));
                }
            }
        }
    }
    LayeredGraph { copies, nodes, inner, cross }
}
