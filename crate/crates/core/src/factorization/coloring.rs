use std::collections::{BTreeMap, BTreeSet};

use super::{FactorError, TwoMatching};
use crate::graph::{DemandGraph, EdgeId, Vertex};

/// Colors are 1, 2, 3.
pub type Color = u8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingColoring {
    pub vertex: BTreeMap<Vertex, Color>,
    pub edge: BTreeMap<EdgeId, Color>,
    pub pins: [Vertex; 3],
}

impl LiftingColoring {
    pub fn class_sizes(&self) -> [usize; 3] {
        let mut sizes = [0; 3];
        for &c in self.vertex.values() {
            sizes[c as usize - 1] += 1;
        }
        sizes
    }

    /// All four lifting-coloring invariants with respect to `f`.
    pub fn is_valid(&self, g: &DemandGraph, f: &TwoMatching) -> bool {
        let sizes = self.class_sizes();
        let balanced = sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 2;
        let pinned = (0..3).all(|i| self.vertex.get(&self.pins[i]) == Some(&(i as Color + 1)));
        let mut at: BTreeMap<Vertex, Vec<Color>> = BTreeMap::new();
        for &id in &f.edges {
            let (Some(e), Some(&c)) = (g.edge(id), self.edge.get(&id)) else {
                return false;
            };
            if self.vertex.get(&e.u) == Some(&c) || self.vertex.get(&e.v) == Some(&c) {
                return false;
            }
            at.entry(e.u).or_default().push(c);
            at.entry(e.v).or_default().push(c);
        }
        let proper = at.values().all(|cs| cs.len() < 2 || cs[0] != cs[1]);
        balanced && pinned && proper && self.edge.len() == f.edges.len()
    }
}

/// Balanced lifting coloring of `f` over `domain` (plus any endpoint of `f`)
/// with `pins[i]` colored `i + 1`.
pub fn balanced_lifting_coloring(
    g: &DemandGraph,
    f: &TwoMatching,
    domain: &[Vertex],
    pins: [Vertex; 3],
) -> Result<LiftingColoring, FactorError> {
    if pins[0] == pins[1] || pins[0] == pins[2] || pins[1] == pins[2] {
        return Err(FactorError::BadPins);
    }
    if !f.is_two_matching_of(g) {
        return Err(FactorError::SeedNotTwoMatching);
    }
    for &id in &f.edges {
        let e = g.edge(id).unwrap();
        if pins.contains(&e.u) && pins.contains(&e.v) {
            return Err(FactorError::PinsAdjacent(e.u.min(e.v), e.u.max(e.v)));
        }
    }
    let comps = components(g, f, domain, &pins);
    let pin_color: BTreeMap<Vertex, Color> = pins.iter().enumerate().map(|(i, &w)| (w, i as Color + 1)).collect();

    let mut memo: BTreeMap<(bool, usize), Candidates> = BTreeMap::new();
    let mut options: Vec<Candidates> = Vec::with_capacity(comps.len());
    for comp in &comps {
        let fixed: Vec<Option<Color>> = comp.verts.iter().map(|v| pin_color.get(v).copied()).collect();
        let unpinned = fixed.iter().all(Option::is_none);
        if unpinned {
            if let Some(c) = memo.get(&(comp.cycle, comp.verts.len())) {
                options.push(c.clone());
                continue;
            }
        }
        let mut cands = color_component(comp, &fixed, BAND);
        if cands.is_empty() {
            cands = color_component(comp, &fixed, WIDE_BAND);
        }
        if cands.is_empty() {
            return Err(FactorError::ColoringFailed);
        }
        if unpinned {
            memo.insert((comp.cycle, comp.verts.len()), cands.clone());
        }
        options.push(cands);
    }

    let picks = combine(&options).ok_or(FactorError::ColoringFailed)?;
    let mut out = LiftingColoring { vertex: BTreeMap::new(), edge: BTreeMap::new(), pins };
    for ((comp, cands), pick) in comps.iter().zip(&options).zip(picks) {
        let (vc, ec) = &cands[pick].1;
        out.vertex.extend(comp.verts.iter().copied().zip(vc.iter().copied()));
        out.edge.extend(comp.edges.iter().copied().zip(ec.iter().copied()));
    }
    if !out.is_valid(g, f) {
        return Err(FactorError::ColoringFailed);
    }
    Ok(out)
}

/// Path or cycle of `f`; `edges[i]` joins `verts[i]` and `verts[i + 1]`
/// (cyclically for cycles, where a 2-bundle is a cycle of length 2).
struct Component {
    verts: Vec<Vertex>,
    edges: Vec<EdgeId>,
    cycle: bool,
}

fn components(g: &DemandGraph, f: &TwoMatching, domain: &[Vertex], pins: &[Vertex; 3]) -> Vec<Component> {
    let mut adj: BTreeMap<Vertex, Vec<(EdgeId, Vertex)>> = BTreeMap::new();
    let mut all: BTreeSet<Vertex> = domain.iter().chain(pins).copied().collect();
    for &id in &f.edges {
        let e = g.edge(id).unwrap();
        adj.entry(e.u).or_default().push((id, e.v));
        adj.entry(e.v).or_default().push((id, e.u));
        all.extend([e.u, e.v]);
    }
    let degree = |v: &Vertex| adj.get(v).map_or(0, Vec::len);
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    let mut out = Vec::new();
    let walk = |start: Vertex, seen: &mut BTreeSet<Vertex>, cycle: bool| {
        let mut verts = vec![start];
        let mut edges = Vec::new();
        seen.insert(start);
        let mut cur = start;
        let mut came: Option<EdgeId> = None;
        loop {
            let next = adj.get(&cur).and_then(|l| l.iter().find(|(id, _)| Some(*id) != came).copied());
            let Some((id, y)) = next else { break };
            edges.push(id);
            if cycle && y == start {
                break;
            }
            verts.push(y);
            seen.insert(y);
            came = Some(id);
            cur = y;
        }
        Component { verts, edges, cycle }
    };
    for &v in &all {
        if degree(&v) == 0 {
            seen.insert(v);
            out.push(Component { verts: vec![v], edges: Vec::new(), cycle: false });
        }
    }
    for &v in &all {
        if !seen.contains(&v) && degree(&v) == 1 {
            out.push(walk(v, &mut seen, false));
        }
    }
    for &v in &all {
        if !seen.contains(&v) {
            out.push(walk(v, &mut seen, true));
        }
    }
    // pinned components first, then larger ones
    out.sort_by_key(|c| (!c.verts.iter().any(|v| pins.contains(v)), std::cmp::Reverse(c.verts.len())));
    out
}

/// Per achievable class-size vector, one coloring (vertex colors, edge colors).
type Candidates = Vec<([usize; 3], (Vec<Color>, Vec<Color>))>;

/// Bound on the class-size spread of a partial component coloring.
const BAND: i32 = 4;
const WIDE_BAND: i32 = 12;

#[derive(Clone, Copy)]
struct Cell {
    cv: Color,
    /// color of the edge entering the current vertex, 0 at the start
    cel: Color,
    cv0: Color,
    /// color of the first edge, 0 until placed
    cef: Color,
    /// class-size offsets n1 - n3 and n2 - n3
    a: i32,
    b: i32,
}

impl Cell {
    fn index(&self, band: i32) -> usize {
        let w = (2 * band + 1) as usize;
        let colors = (((self.cv as usize - 1) * 4 + self.cel as usize) * 3 + self.cv0 as usize - 1) * 4 + self.cef as usize;
        (colors * w + (self.a + band) as usize) * w + (self.b + band) as usize
    }

    fn with_vertex(mut self, c: Color) -> Self {
        match c {
            1 => self.a += 1,
            2 => self.b += 1,
            _ => {
                self.a -= 1;
                self.b -= 1;
            }
        }
        self
    }

    fn spread(&self) -> i32 {
        self.a.max(self.b).max(0) - self.a.min(self.b).min(0)
    }
}

fn third(used: &[Color]) -> impl Iterator<Item = Color> + '_ {
    (1..=3).filter(move |c| !used.contains(c))
}

/// Layered search over the component's positions, keeping one predecessor
/// per (colors, class offsets) cell.
fn color_component(comp: &Component, fixed: &[Option<Color>], band: i32) -> Candidates {
    let k = comp.verts.len();
    let allowed = |i: usize| -> Vec<Color> { fixed[i].map_or(vec![1, 2, 3], |c| vec![c]) };
    let w = (2 * band + 1) as usize;
    let mut slot = vec![u32::MAX; 144 * w * w];
    let mut layers: Vec<Vec<(Cell, u32)>> = Vec::with_capacity(k);
    let start = Cell { cv: 1, cel: 0, cv0: 1, cef: 0, a: 0, b: 0 };
    layers.push(
        allowed(0)
            .into_iter()
            .map(|c| (Cell { cv: c, cv0: c, ..start }.with_vertex(c), u32::MAX))
            .collect(),
    );
    for i in 1..k {
        let mut next: Vec<(Cell, u32)> = Vec::new();
        let options = allowed(i);
        for (pos, (cell, _)) in layers[i - 1].iter().enumerate() {
            for &c in &options {
                for e in third(&[cell.cv, c, cell.cel]) {
                    let mut n = cell.with_vertex(c);
                    n.cv = c;
                    n.cel = e;
                    if i == 1 {
                        n.cef = e;
                    }
                    if n.spread() > band {
                        continue;
                    }
                    let idx = n.index(band);
                    if slot[idx] == u32::MAX {
                        slot[idx] = next.len() as u32;
                        next.push((n, pos as u32));
                    }
                }
            }
        }
        for (cell, _) in &next {
            slot[cell.index(band)] = u32::MAX;
        }
        if next.is_empty() {
            return Vec::new();
        }
        layers.push(next);
    }

    let mut found: BTreeMap<[usize; 3], (Vec<Color>, Vec<Color>)> = BTreeMap::new();
    for (pos, (cell, _)) in layers[k - 1].iter().enumerate() {
        let closing = if comp.cycle {
            match third(&[cell.cv, cell.cv0, cell.cel, cell.cef]).next() {
                Some(e) => Some(e),
                None => continue,
            }
        } else {
            None
        };
        let n3 = (k as i32 - cell.a - cell.b) / 3;
        let counts = [(n3 + cell.a) as usize, (n3 + cell.b) as usize, n3 as usize];
        if found.contains_key(&counts) {
            continue;
        }
        let mut vc = vec![0; k];
        let mut ec = Vec::with_capacity(comp.edges.len());
        let mut p = pos;
        for i in (0..k).rev() {
            let (c, back) = layers[i][p];
            vc[i] = c.cv;
            if i > 0 {
                ec.push(c.cel);
            }
            p = back as usize;
        }
        ec.reverse();
        ec.extend(closing);
        found.insert(counts, (vc, ec));
    }
    found.into_iter().collect()
}

/// Picks one candidate per component so that the total class sizes have
/// spread at most 2.
fn combine(options: &[Candidates]) -> Option<Vec<usize>> {
    const TOTAL: i32 = 8;
    let w = (2 * TOTAL + 1) as usize;
    let at = |a: i32, b: i32| ((a + TOTAL) as usize) * w + (b + TOTAL) as usize;
    // per component: state -> (previous state, candidate)
    let mut back: Vec<Vec<Option<(usize, usize)>>> = Vec::with_capacity(options.len());
    let mut reach = vec![false; w * w];
    reach[at(0, 0)] = true;
    for cands in options {
        let mut step = vec![None; w * w];
        for a in -TOTAL..=TOTAL {
            for b in -TOTAL..=TOTAL {
                if !reach[at(a, b)] {
                    continue;
                }
                for (ci, (n, _)) in cands.iter().enumerate() {
                    let na = a + n[0] as i32 - n[2] as i32;
                    let nb = b + n[1] as i32 - n[2] as i32;
                    if na.abs() > TOTAL || nb.abs() > TOTAL {
                        continue;
                    }
                    let idx = at(na, nb);
                    if step[idx].is_none() {
                        step[idx] = Some((at(a, b), ci));
                    }
                }
            }
        }
        reach = step.iter().map(Option::is_some).collect();
        back.push(step);
    }
    let spread = |idx: usize| {
        let (a, b) = ((idx / w) as i32 - TOTAL, (idx % w) as i32 - TOTAL);
        a.max(b).max(0) - a.min(b).min(0)
    };
    let mut state = (0..w * w).filter(|&i| reach[i] && spread(i) <= 2).min_by_key(|&i| (spread(i), i))?;
    let mut picks = vec![0; options.len()];
    for (i, step) in back.iter().enumerate().rev() {
        let (prev, ci) = step[state].unwrap();
        picks[i] = ci;
        state = prev;
    }
    Some(picks)
}
