//! Enumeration of class systems.
//!
//! A labeling with at most `k` distinct edge labels partitions the edges
//! into classes of equal label. For sums every class is a matching. For
//! differences every class is a linear forest, and writing
//! `f(u) - f(v) = s·α_c` for an edge `u < v` in class `c`, the two class
//! edges at a shared vertex leave it in opposite directions.
//!
//! Edges are assigned in a fixed order. A new class is only opened as the
//! next unused index, and the first edge of each difference class gets sign
//! `+1`, which fixes the sign of `α_c`. Along the way every vertex reached by
//! the assigned edges carries a symbolic label
//! `±f(root) + Σ coef_c·α_c` over a spanning forest of those edges; two
//! vertices with the same symbolic label are equal on every solution, so
//! the branch is cut.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex};
use crate::labeling::IndexKind;

pub const UNASSIGNED: u8 = u8::MAX;

/// `±f(root) + Σ coef_c·α_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Sym {
    root: Vertex,
    root_sign: i8,
    coef: Vec<i32>,
}

/// One step of a class system: the class and sign given to an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Choice {
    pub class: u8,
    pub sign: i8,
}

pub(crate) struct ClassSearch<'g> {
    pub g: &'g Graph,
    pub kind: IndexKind,
    pub k: usize,
    /// Edge indices in assignment order.
    pub order: Vec<usize>,
    pub class: Vec<u8>,
    pub sign: Vec<i8>,
    pub used: usize,
    /// Classes present at each vertex.
    vmask: Vec<u64>,
    /// Assigned edges at each vertex.
    vedges: Vec<Vec<usize>>,
    sym: Vec<Option<Sym>>,
}

/// What `push` changed, for `pop`.
pub(crate) struct Undo {
    edge: usize,
    opened: bool,
    new_syms: [Option<Vertex>; 2],
}

impl<'g> ClassSearch<'g> {
    pub fn new(g: &'g Graph, kind: IndexKind, k: usize) -> Self {
        assert!(k <= 64, "at most 64 classes are supported");
        ClassSearch {
            g,
            kind,
            k,
            order: g.bfs_edge_order(),
            class: vec![UNASSIGNED; g.edge_count()],
            sign: vec![1; g.edge_count()],
            used: 0,
            vmask: vec![0; g.n()],
            vedges: vec![Vec::new(); g.n()],
            sym: vec![None; g.n()],
        }
    }

    /// Outward direction of assigned edge `e` at its endpoint `w`.
    fn outward(&self, e: usize, w: Vertex) -> i8 {
        let (_, b) = self.g.edges()[e];
        if w == b {
            self.sign[e]
        } else {
            -self.sign[e]
        }
    }

    fn class_edges_at(&self, w: Vertex, c: u8) -> impl Iterator<Item = usize> + '_ {
        self.vedges[w].iter().copied().filter(move |&e| self.class[e] == c)
    }

    /// Whether `from` reaches `to` along class-`c` edges.
    fn class_path_connects(&self, from: Vertex, to: Vertex, c: u8) -> bool {
        let mut prev = usize::MAX;
        let mut at = from;
        loop {
            let next = self.class_edges_at(at, c).find(|&e| e != prev);
            let Some(e) = next else { return false };
            let (a, b) = self.g.edges()[e];
            at = if a == at { b } else { a };
            if at == to {
                return true;
            }
            prev = e;
        }
    }

    /// The choices available for the edge at position `pos`, in search order.
    pub fn choices(&self, pos: usize) -> Vec<Choice> {
        let e = self.order[pos];
        let (u, v) = self.g.edges()[e];
        let top = (self.used + 1).min(self.k);
        let mut out = Vec::new();
        for c in 0..top as u8 {
            match self.kind {
                IndexKind::Sum => {
                    if (self.vmask[u] | self.vmask[v]) & (1 << c) == 0 {
                        out.push(Choice { class: c, sign: 1 });
                    }
                }
                IndexKind::Diff => {
                    if (c as usize) == self.used {
                        out.push(Choice { class: c, sign: 1 });
                        continue;
                    }
                    let at_u: Vec<usize> = self.class_edges_at(u, c).collect();
                    let at_v: Vec<usize> = self.class_edges_at(v, c).collect();
                    if at_u.len() >= 2 || at_v.len() >= 2 {
                        continue;
                    }
                    // At u the new edge points to the larger endpoint, so its
                    // outward value is -s; at v it is s.
                    let from_u = at_u.first().map(|&f| self.outward(f, u));
                    let from_v = at_v.first().map(|&f| -self.outward(f, v));
                    match (from_u, from_v) {
                        (Some(a), Some(b)) => {
                            if a == b && !self.class_path_connects(u, v, c) {
                                out.push(Choice { class: c, sign: a });
                            }
                        }
                        (Some(s), None) | (None, Some(s)) => out.push(Choice { class: c, sign: s }),
                        (None, None) => {
                            out.push(Choice { class: c, sign: 1 });
                            out.push(Choice { class: c, sign: -1 });
                        }
                    }
                }
            }
        }
        out
    }

    /// Symbolic label of `x` given the label of its neighbour `y` across an
    /// edge in class `c` with sign `s`.
    fn derive(&self, known: &Sym, known_is_smaller: bool, c: u8, s: i8) -> Sym {
        let mut coef = known.coef.clone();
        match self.kind {
            IndexKind::Sum => {
                for x in &mut coef {
                    *x = -*x;
                }
                coef[c as usize] += 1;
                Sym { root: known.root, root_sign: -known.root_sign, coef }
            }
            IndexKind::Diff => {
                // f(small) - f(large) = s·α_c.
                let delta = if known_is_smaller { -(s as i32) } else { s as i32 };
                coef[c as usize] += delta;
                Sym { root: known.root, root_sign: known.root_sign, coef }
            }
        }
    }

    fn collides(&self, x: Vertex) -> bool {
        let sx = self.sym[x].as_ref().unwrap();
        self.sym.iter().enumerate().any(|(y, sy)| y != x && sy.as_ref() == Some(sx))
    }

    /// Assigns a choice to the edge at `pos`. Returns `None`, leaving the
    /// state unchanged, if the symbolic labels collide.
    pub fn push(&mut self, pos: usize, ch: Choice) -> Option<Undo> {
        let e = self.order[pos];
        let (u, v) = self.g.edges()[e];
        let opened = ch.class as usize == self.used;
        self.class[e] = ch.class;
        self.sign[e] = ch.sign;
        if opened {
            self.used += 1;
        }
        self.vmask[u] |= 1 << ch.class;
        self.vmask[v] |= 1 << ch.class;
        self.vedges[u].push(e);
        self.vedges[v].push(e);

        let mut new_syms = [None, None];
        match (self.sym[u].is_some(), self.sym[v].is_some()) {
            (true, true) => {}
            (true, false) => {
                self.sym[v] = Some(self.derive(self.sym[u].as_ref().unwrap(), true, ch.class, ch.sign));
                new_syms[0] = Some(v);
            }
            (false, true) => {
                self.sym[u] = Some(self.derive(self.sym[v].as_ref().unwrap(), false, ch.class, ch.sign));
                new_syms[0] = Some(u);
            }
            (false, false) => {
                let root = Sym { root: u, root_sign: 1, coef: vec![0; self.k] };
                self.sym[v] = Some(self.derive(&root, true, ch.class, ch.sign));
                self.sym[u] = Some(root);
                new_syms = [Some(u), Some(v)];
            }
        }
        let undo = Undo { edge: e, opened, new_syms };
        if new_syms.iter().flatten().any(|&x| self.collides(x)) {
            self.pop(undo);
            return None;
        }
        Some(undo)
    }

    pub fn pop(&mut self, undo: Undo) {
        let e = undo.edge;
        let (u, v) = self.g.edges()[e];
        for x in undo.new_syms.into_iter().flatten() {
            self.sym[x] = None;
        }
        self.vedges[u].pop();
        self.vedges[v].pop();
        let c = self.class[e];
        self.vmask[u] &= !(1 << c);
        self.vmask[v] &= !(1 << c);
        // A vertex has at most two difference edges of one class.
        for w in [u, v] {
            if self.class_edges_at(w, c).next().is_some() {
                self.vmask[w] |= 1 << c;
            }
        }
        if undo.opened {
            self.used -= 1;
        }
        self.class[e] = UNASSIGNED;
        self.sign[e] = 1;
    }
}
