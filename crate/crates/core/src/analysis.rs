//! Positive dependency graph, strongly connected components, tightness.

use std::collections::{BTreeMap, BTreeSet};

use crate::model::{AtomId, CasProgram, Head};

/// Nodes are the regular atoms of the program; an edge `(a, b)` means some
/// rule with head `a` has `b` in its positive body and `b` is not an input
/// (irregular) atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyGraph {
    nodes: Vec<AtomId>,
    edges: BTreeSet<(AtomId, AtomId)>,
}

impl DependencyGraph {
    pub fn new(nodes: Vec<AtomId>, edges: impl IntoIterator<Item = (AtomId, AtomId)>) -> Self {
        DependencyGraph {
            nodes,
            edges: edges.into_iter().collect(),
        }
    }

    pub fn nodes(&self) -> &[AtomId] {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<(AtomId, AtomId)> {
        &self.edges
    }

    pub fn has_self_loop(&self, a: AtomId) -> bool {
        self.edges.contains(&(a, a))
    }

    fn successors(&self) -> BTreeMap<AtomId, Vec<AtomId>> {
        let mut succ: BTreeMap<AtomId, Vec<AtomId>> =
            self.nodes.iter().map(|n| (*n, Vec::new())).collect();
        for (a, b) in &self.edges {
            succ.entry(*a).or_default().push(*b);
        }
        succ
    }

    /// `head <- body_atom` lines, sorted.
    pub fn render(&self, program: &CasProgram) -> String {
        let mut lines: Vec<String> = self
            .edges
            .iter()
            .map(|(a, b)| format!("{} <- {}", program.atom(*a).name, program.atom(*b).name))
            .collect();
        lines.sort();
        lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

pub fn dependency_graph(program: &CasProgram) -> DependencyGraph {
    let input = program.input_vocabulary();
    let mut edges = BTreeSet::new();
    for rule in program.rules() {
        if let Head::Atom(a) = rule.head {
            for b in &rule.pos {
                if !input.contains(b) {
                    edges.insert((a, *b));
                }
            }
        }
    }
    DependencyGraph::new(program.regular().collect(), edges)
}

/// Components in reverse topological order: for an edge `(a, b)` between
/// distinct components, `b`'s component comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    components: Vec<Vec<AtomId>>,
    component_of: BTreeMap<AtomId, usize>,
    nontrivial: Vec<bool>,
}

impl SccDecomposition {
    pub fn components(&self) -> &[Vec<AtomId>] {
        &self.components
    }

    pub fn component_of(&self, a: AtomId) -> Option<usize> {
        self.component_of.get(&a).copied()
    }

    /// More than one atom, or a single atom depending on itself.
    pub fn is_nontrivial(&self, component: usize) -> bool {
        self.nontrivial[component]
    }

    pub fn same_component(&self, a: AtomId, b: AtomId) -> bool {
        match (self.component_of(a), self.component_of(b)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }

    pub fn in_nontrivial(&self, a: AtomId) -> bool {
        self.component_of(a).is_some_and(|c| self.nontrivial[c])
    }
}

/// Tarjan's algorithm, iterative, visiting nodes in insertion order and
/// successors in id order.
pub fn sccs(graph: &DependencyGraph) -> SccDecomposition {
    let succ = graph.successors();
    let mut index: BTreeMap<AtomId, usize> = BTreeMap::new();
    let mut lowlink: BTreeMap<AtomId, usize> = BTreeMap::new();
    let mut on_stack: BTreeSet<AtomId> = BTreeSet::new();
    let mut stack: Vec<AtomId> = Vec::new();
    let mut components: Vec<Vec<AtomId>> = Vec::new();
    let mut next = 0usize;

    for &root in graph.nodes() {
        if index.contains_key(&root) {
            continue;
        }
        // (node, next successor position)
        let mut call: Vec<(AtomId, usize)> = vec![(root, 0)];
        index.insert(root, next);
        lowlink.insert(root, next);
        next += 1;
        stack.push(root);
        on_stack.insert(root);

        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            let vs = succ.get(&v).map(Vec::as_slice).unwrap_or(&[]);
            if *i < vs.len() {
                let w = vs[*i];
                *i += 1;
                if let std::collections::btree_map::Entry::Vacant(e) = index.entry(w) {
                    e.insert(next);
                    lowlink.insert(w, next);
                    next += 1;
                    stack.push(w);
                    on_stack.insert(w);
                    call.push((w, 0));
                } else if on_stack.contains(&w) {
                    let low = lowlink[&v].min(index[&w]);
                    lowlink.insert(v, low);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                let low = lowlink[&parent].min(lowlink[&v]);
                lowlink.insert(parent, low);
            }
            if lowlink[&v] == index[&v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack.remove(&w);
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                component.reverse();
                components.push(component);
            }
        }
    }

    let mut component_of = BTreeMap::new();
    let mut nontrivial = Vec::with_capacity(components.len());
    for (i, comp) in components.iter().enumerate() {
        for a in comp {
            component_of.insert(*a, i);
        }
        nontrivial.push(comp.len() > 1 || graph.has_self_loop(comp[0]));
    }
    SccDecomposition {
        components,
        component_of,
        nontrivial,
    }
}

pub fn is_tight(program: &CasProgram) -> bool {
    let decomposition = sccs(&dependency_graph(program));
    (0..decomposition.components().len()).all(|c| !decomposition.is_nontrivial(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_program;

    fn edge_names(p: &CasProgram) -> Vec<(String, String)> {
        dependency_graph(p)
            .edges()
            .iter()
            .map(|(a, b)| (p.atom(*a).name.clone(), p.atom(*b).name.clone()))
            .collect()
    }

    fn id(n: u32) -> AtomId {
        AtomId(n)
    }

    #[test]
    fn mutual_dependency_edges() {
        let p = parse_program("a :- b. b :- a.").unwrap();
        let mut e = edge_names(&p);
        e.sort();
        assert_eq!(e, vec![("a".into(), "b".into()), ("b".into(), "a".into())]);
    }

    #[test]
    fn p1_has_single_edge() {
        let p = parse_program(crate::fixtures::P1).unwrap();
        assert_eq!(edge_names(&p), vec![("lightOn".into(), "switch".into())]);
        assert!(is_tight(&p));
    }

    #[test]
    fn irregular_atoms_are_not_graph_nodes() {
        let p = parse_program("cvar x : int. :- [x<0]!.").unwrap();
        let g = dependency_graph(&p);
        assert!(g.nodes().is_empty());
        assert!(g.edges().is_empty());
    }

    #[test]
    fn two_cycle_is_one_component() {
        let g = DependencyGraph::new(vec![id(0), id(1)], [(id(0), id(1)), (id(1), id(0))]);
        let s = sccs(&g);
        assert_eq!(s.components(), &[vec![id(0), id(1)]]);
        assert!(s.is_nontrivial(0));
    }

    #[test]
    fn chain_is_reverse_topological() {
        let g = DependencyGraph::new(vec![id(0), id(1)], [(id(0), id(1))]);
        let s = sccs(&g);
        assert_eq!(s.components(), &[vec![id(1)], vec![id(0)]]);
    }

    #[test]
    fn three_cycle() {
        let g = DependencyGraph::new(
            vec![id(0), id(1), id(2)],
            [(id(0), id(1)), (id(1), id(2)), (id(2), id(0))],
        );
        let s = sccs(&g);
        assert_eq!(s.components().len(), 1);
        assert_eq!(s.components()[0].len(), 3);
    }

    #[test]
    fn self_loop_is_not_tight() {
        assert!(!is_tight(&parse_program("p :- p.").unwrap()));
        assert!(is_tight(&parse_program("").unwrap()));
        let s = sccs(&dependency_graph(&parse_program("p :- p.").unwrap()));
        assert!(s.is_nontrivial(0));
    }

    #[test]
    fn isolated_atoms_are_nodes() {
        let p = parse_program("a :- not b.").unwrap();
        let s = sccs(&dependency_graph(&p));
        assert_eq!(s.components().len(), 2);
        assert!(s.component_of(p.atom_id("b").unwrap()).is_some());
    }

    #[test]
    fn render_is_sorted() {
        let p = parse_program("b :- a. a :- c, b.").unwrap();
        assert_eq!(dependency_graph(&p).render(&p), "a <- b\na <- c\nb <- a\n");
    }
}
