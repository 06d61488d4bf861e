//! Oriented link diagrams from planar-diagram (PD) codes.
//!
//! A crossing `X[a,b,c,d]` lists its four edge ends counterclockwise,
//! starting at the incoming under-edge `a`; the under-strand runs `a → c`.
//! The over-strand direction is read off the component cycles: it runs
//! `d → b` when `b` follows `d` (writhe `+1`) and `b → d` otherwise.
//! `O[k]` is a crossingless circle carrying edge `k`.
//!
//! From the rotation system we derive faces (sphere embedding), the
//! checkerboard shading with a white outer face, the writhe sign `w` and
//! the checkerboard sign `ε` of each crossing: `ε = +1` iff the corner
//! between ends `a` and `b` is shaded.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(crossing index, position 0..4)`.
pub type EdgeEnd = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdDiagram {
    crossings: Vec<[usize; 4]>,
    loops: Vec<usize>,
    edge_count: usize,
    components: Vec<Vec<usize>>,
    // indexed by edge id (slot 0 unused)
    succ: Vec<usize>,
    head: Vec<Option<EdgeEnd>>,
    tail: Vec<Option<EdgeEnd>>,
    writhe: Vec<i8>,
}

impl PdDiagram {
    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn loops(&self) -> &[usize] {
        &self.loops
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Edge ids of each component, in orientation order, starting at the
    /// least id.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn is_knot(&self) -> bool {
        self.components.len() == 1
    }

    pub fn successor(&self, edge: usize) -> usize {
        self.succ[edge]
    }

    /// Where `edge` ends (its incoming end), if it meets a crossing.
    pub fn head(&self, edge: usize) -> Option<EdgeEnd> {
        self.head[edge]
    }

    pub fn tail(&self, edge: usize) -> Option<EdgeEnd> {
        self.tail[edge]
    }

    pub fn edge_at(&self, (c, p): EdgeEnd) -> usize {
        self.crossings[c][p]
    }

    /// Writhe sign `w(τ)` of crossing `c`.
    pub fn writhe_sign(&self, c: usize) -> i8 {
        self.writhe[c]
    }

    pub fn writhe(&self) -> i64 {
        self.writhe.iter().map(|&w| w as i64).sum()
    }

    /// The other end of the edge sitting at `end`.
    fn other_end(&self, end: EdgeEnd) -> EdgeEnd {
        let e = self.edge_at(end);
        let (h, t) = (self.head[e].expect("crossing edge"), self.tail[e].expect("crossing edge"));
        if h == end {
            t
        } else {
            h
        }
    }

    pub fn to_pd_string(&self) -> String {
        let mut terms: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X[{},{},{},{}]", x[0], x[1], x[2], x[3]))
            .collect();
        terms.extend(self.loops.iter().map(|k| format!("O[{k}]")));
        terms.join(" ")
    }
}

impl fmt::Display for PdDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

enum Term {
    Crossing([usize; 4]),
    Loop(usize),
}

fn scan_terms(text: &str) -> Result<Vec<Term>> {
    let mut terms = Vec::new();
    let mut rest = text.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    while !rest.is_empty() {
        let kind = rest.chars().next().expect("non-empty");
        if kind != 'X' && kind != 'O' {
            return Err(Error::PdParse(format!("expected `X[` or `O[` at `{}`", snippet(rest))));
        }
        let body_start = rest[1..]
            .strip_prefix('[')
            .ok_or_else(|| Error::PdParse(format!("missing `[` after `{kind}`")))?;
        let close = body_start
            .find(']')
            .ok_or_else(|| Error::PdParse(format!("unterminated term `{}`", snippet(rest))))?;
        let ids = body_start[..close]
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::PdParse(format!("bad edge id `{}`", s.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        if ids.contains(&0) {
            return Err(Error::PdParse("edge ids are 1-based".into()));
        }
        match (kind, ids.as_slice()) {
            ('X', &[a, b, c, d]) => terms.push(Term::Crossing([a, b, c, d])),
            ('O', &[k]) => terms.push(Term::Loop(k)),
            ('X', _) => {
                return Err(Error::PdParse(format!("X term needs 4 edge ids, got {}", ids.len())))
            }
            _ => return Err(Error::PdParse(format!("O term needs 1 edge id, got {}", ids.len()))),
        }
        rest = body_start[close + 1..].trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    }
    Ok(terms)
}

fn snippet(s: &str) -> String {
    s.chars().take(12).collect()
}

/// Parses whitespace-separated `X[a,b,c,d]` and `O[k]` terms.
pub fn parse_pd(text: &str) -> Result<PdDiagram> {
    let terms = scan_terms(text)?;
    if terms.is_empty() {
        return Err(Error::PdParse("empty diagram (use O[1] for the crossingless unknot)".into()));
    }
    let mut crossings = Vec::new();
    let mut loops = Vec::new();
    for t in terms {
        match t {
            Term::Crossing(x) => crossings.push(x),
            Term::Loop(k) => loops.push(k),
        }
    }
    build(crossings, loops)
}

fn build(crossings: Vec<[usize; 4]>, loops: Vec<usize>) -> Result<PdDiagram> {
    let edge_count = 2 * crossings.len() + loops.len();
    let mut ends: Vec<Vec<EdgeEnd>> = vec![Vec::new(); edge_count + 1];
    for (c, x) in crossings.iter().enumerate() {
        for (p, &e) in x.iter().enumerate() {
            if e > edge_count {
                return Err(Error::InvalidDiagram(format!(
                    "edge id {e} exceeds edge count {edge_count}"
                )));
            }
            ends[e].push((c, p));
        }
    }
    let mut is_loop = vec![false; edge_count + 1];
    for &k in &loops {
        if k > edge_count {
            return Err(Error::InvalidDiagram(format!("edge id {k} exceeds edge count {edge_count}")));
        }
        if is_loop[k] || !ends[k].is_empty() {
            return Err(Error::InvalidDiagram(format!("loop edge {k} is used elsewhere")));
        }
        is_loop[k] = true;
    }
    for e in 1..=edge_count {
        if !is_loop[e] && ends[e].len() != 2 {
            return Err(Error::InvalidDiagram(format!(
                "edge {e} appears {} times, expected exactly twice",
                ends[e].len()
            )));
        }
    }

    let mut succ = vec![0; edge_count + 1];
    let mut head = vec![None; edge_count + 1];
    let mut tail = vec![None; edge_count + 1];
    let mut components = Vec::new();
    let mut seen = vec![false; edge_count + 1];
    let other = |e: usize, end: EdgeEnd| -> EdgeEnd {
        if ends[e][0] == end {
            ends[e][1]
        } else {
            ends[e][0]
        }
    };
    for start in 1..=edge_count {
        if seen[start] {
            continue;
        }
        if is_loop[start] {
            seen[start] = true;
            succ[start] = start;
            components.push(vec![start]);
            continue;
        }
        // walk the strand, leaving `start` through ends[start][1]
        let mut walk = Vec::new(); // (edge, arrival end)
        let mut e = start;
        let mut arrive = ends[start][1];
        loop {
            walk.push((e, arrive));
            let (c, p) = arrive;
            let depart = (c, (p + 2) % 4);
            let next = crossings[c][depart.1];
            if next == start && other(next, depart) == ends[start][1] {
                break;
            }
            if walk.len() > edge_count {
                return Err(Error::InvalidDiagram("strand walk does not close up".into()));
            }
            e = next;
            arrive = other(next, depart);
        }
        let forward = walk.iter().filter(|(_, (_, p))| *p == 0).count();
        let backward = walk.iter().filter(|(_, (_, p))| *p == 2).count();
        if forward > 0 && backward > 0 {
            return Err(Error::InvalidDiagram(format!(
                "inconsistent orientation on the component through edge {start}"
            )));
        }
        let mut cycle: Vec<usize> = walk.iter().map(|&(e, _)| e).collect();
        let reverse = if forward + backward > 0 {
            backward > 0
        } else {
            // no under-passages: orient so the least edge is followed by its
            // smaller neighbour
            let k = cycle.len();
            let i = (0..k).min_by_key(|&i| cycle[i]).expect("non-empty");
            cycle[(i + k - 1) % k] < cycle[(i + 1) % k]
        };
        let arrivals: Vec<EdgeEnd> = if reverse {
            cycle.reverse();
            // arriving at the old departure end
            cycle.iter().map(|&e| other(e, walk.iter().find(|w| w.0 == e).map(|w| w.1).expect("edge in walk"))).collect()
        } else {
            walk.iter().map(|&(_, a)| a).collect()
        };
        for (i, &e) in cycle.iter().enumerate() {
            if seen[e] {
                return Err(Error::InvalidDiagram(format!("edge {e} visited twice")));
            }
            seen[e] = true;
            head[e] = Some(arrivals[i]);
            tail[e] = Some(other(e, arrivals[i]));
            succ[e] = cycle[(i + 1) % cycle.len()];
        }
        let k = cycle.len();
        let m = (0..k).min_by_key(|&i| cycle[i]).expect("non-empty");
        cycle.rotate_left(m);
        components.push(cycle);
    }
    components.sort();

    let writhe = crossings
        .iter()
        .enumerate()
        .map(|(c, x)| if head[x[3]] == Some((c, 3)) { 1 } else { -1 })
        .collect();
    let d = PdDiagram { crossings, loops, edge_count, components, succ, head, tail, writhe };
    // reject codes that do not describe a planar diagram
    faces(&d)?;
    Ok(d)
}

/// Partition of edges into arcs (maximal over-passing strands).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcSet {
    /// Edge ids of each arc in orientation order.
    pub arcs: Vec<Vec<usize>>,
    /// `arc_of[e]` for edge id `e` (slot 0 unused).
    pub arc_of: Vec<usize>,
}

impl ArcSet {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }
}

pub fn arcs(d: &PdDiagram) -> ArcSet {
    let mut arcs = Vec::new();
    let mut arc_of = vec![usize::MAX; d.edge_count + 1];
    for comp in &d.components {
        // arcs start right after an under-passage
        let k = comp.len();
        let starts: Vec<usize> = (0..k)
            .filter(|&i| matches!(d.tail[comp[i]], Some((_, 2))))
            .collect();
        if starts.is_empty() {
            let id = arcs.len();
            for &e in comp {
                arc_of[e] = id;
            }
            arcs.push(comp.clone());
            continue;
        }
        for &s in &starts {
            let id = arcs.len();
            let mut arc = Vec::new();
            let mut i = s;
            loop {
                let e = comp[i];
                arc.push(e);
                arc_of[e] = id;
                if matches!(d.head[e], Some((_, 0))) {
                    break;
                }
                i = (i + 1) % k;
            }
            arcs.push(arc);
        }
    }
    // number arcs by least edge id
    let mut order: Vec<usize> = (0..arcs.len()).collect();
    order.sort_by_key(|&i| arcs[i].iter().min().copied());
    let mut rename = vec![0; arcs.len()];
    for (new, &old) in order.iter().enumerate() {
        rename[old] = new;
    }
    let arcs_sorted = order.iter().map(|&i| arcs[i].clone()).collect();
    for slot in arc_of.iter_mut().skip(1) {
        *slot = rename[*slot];
    }
    ArcSet { arcs: arcs_sorted, arc_of }
}

/// Crossings passed over by each arc, in orientation order.
pub fn over_passages(d: &PdDiagram, arcs: &ArcSet) -> Vec<Vec<usize>> {
    arcs.arcs
        .iter()
        .map(|arc| {
            arc.iter()
                .filter_map(|&e| match d.head[e] {
                    Some((c, p)) if p % 2 == 1 => Some(c),
                    _ => None,
                })
                .collect()
        })
        .collect()
}

/// Faces of the diagram as orbits of corners.
///
/// Corner `(c, p)` is the region between ends `p` and `p + 1` (mod 4) of
/// crossing `c`. Walking the boundary, corner `(c, p)` continues along the
/// edge at `(c, p + 1)` to its far end `(c', q)`, which is corner `(c', q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSet {
    /// Corners of each face in boundary order.
    pub faces: Vec<Vec<EdgeEnd>>,
    /// Edge ids traversed along each face boundary.
    pub boundary_edges: Vec<Vec<usize>>,
    /// `face_of[c][p]` for corner `(c, p)`.
    pub face_of: Vec<[usize; 4]>,
    /// Connected piece (of the crossing graph) each face belongs to.
    pub piece_of_face: Vec<usize>,
    /// Default outer face of each piece.
    pub default_outer: Vec<usize>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Default outer face of the piece containing edge 1, if it has crossings.
    pub fn outer_face(&self) -> Option<usize> {
        self.default_outer.first().copied()
    }
}

fn pieces(d: &PdDiagram) -> (Vec<usize>, usize) {
    let v = d.crossings.len();
    let mut piece = vec![usize::MAX; v];
    let mut count = 0;
    // visit pieces in order of their least edge id
    let mut edges: Vec<usize> = (1..=d.edge_count).filter(|&e| d.head[e].is_some()).collect();
    edges.sort_unstable();
    for e in edges {
        let (c0, _) = d.head[e].expect("crossing edge");
        if piece[c0] != usize::MAX {
            continue;
        }
        piece[c0] = count;
        let mut queue = VecDeque::from([c0]);
        while let Some(c) = queue.pop_front() {
            for p in 0..4 {
                let (c2, _) = d.other_end((c, p));
                if piece[c2] == usize::MAX {
                    piece[c2] = count;
                    queue.push_back(c2);
                }
            }
        }
        count += 1;
    }
    (piece, count)
}

pub fn faces(d: &PdDiagram) -> Result<FaceSet> {
    let v = d.crossings.len();
    let mut face_of = vec![[usize::MAX; 4]; v];
    let mut faces = Vec::new();
    let mut boundary_edges = Vec::new();
    for c in 0..v {
        for p in 0..4 {
            if face_of[c][p] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut corners = Vec::new();
            let mut edges = Vec::new();
            let mut cur = (c, p);
            while face_of[cur.0][cur.1] == usize::MAX {
                face_of[cur.0][cur.1] = id;
                corners.push(cur);
                let along = (cur.0, (cur.1 + 1) % 4);
                edges.push(d.edge_at(along));
                cur = d.other_end(along);
            }
            if cur != (c, p) {
                return Err(Error::InvalidDiagram("face walk did not close".into()));
            }
            faces.push(corners);
            boundary_edges.push(edges);
        }
    }
    let (piece, piece_count) = pieces(d);
    let piece_of_face: Vec<usize> = faces.iter().map(|f| piece[f[0].0]).collect();
    for k in 0..piece_count {
        let vk = piece.iter().filter(|&&p| p == k).count() as i64;
        let ek = 2 * vk;
        let fk = piece_of_face.iter().filter(|&&p| p == k).count() as i64;
        if vk - ek + fk != 2 {
            return Err(Error::InvalidDiagram(format!(
                "Euler check failed: V - E + F = {vk} - {ek} + {fk} != 2 (not a planar diagram)"
            )));
        }
    }
    let mut default_outer = vec![usize::MAX; piece_count];
    for e in 1..=d.edge_count {
        if let Some((c, p)) = d.head[e] {
            let k = piece[c];
            if default_outer[k] == usize::MAX {
                default_outer[k] = face_of[c][p];
            }
        }
    }
    Ok(FaceSet { faces, boundary_edges, face_of, piece_of_face, default_outer })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceColor {
    White,
    Shaded,
}

impl FaceColor {
    fn flip(self) -> Self {
        match self {
            FaceColor::White => FaceColor::Shaded,
            FaceColor::Shaded => FaceColor::White,
        }
    }
}

/// Checkerboard coloring of the faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shading {
    pub colors: Vec<FaceColor>,
    /// White outer face of each connected piece.
    pub outer: Vec<usize>,
}

impl Shading {
    /// Swaps white and shaded everywhere.
    pub fn flipped(&self) -> Shading {
        Shading { colors: self.colors.iter().map(|c| c.flip()).collect(), outer: self.outer.clone() }
    }

    pub fn is_shaded(&self, face: usize) -> bool {
        self.colors[face] == FaceColor::Shaded
    }
}

/// Two-colors the faces so that the outer face of each piece is white.
///
/// `outer_face` overrides the default outer face of the piece it lies in.
pub fn checkerboard(d: &PdDiagram, faces: &FaceSet, outer_face: Option<usize>) -> Result<Shading> {
    let mut outer = faces.default_outer.clone();
    if let Some(f) = outer_face {
        if f >= faces.len() {
            return Err(Error::InvalidDiagram(format!("outer face {f} does not exist")));
        }
        outer[faces.piece_of_face[f]] = f;
    }
    let mut colors: Vec<Option<FaceColor>> = vec![None; faces.len()];
    for &root in &outer {
        colors[root] = Some(FaceColor::White);
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            let here = colors[f].expect("queued faces are colored");
            for &(c, p) in &faces.faces[f] {
                // across the edge at p and across the edge at p + 1
                for q in [(p + 3) % 4, (p + 1) % 4] {
                    let g = faces.face_of[c][q];
                    match colors[g] {
                        None => {
                            colors[g] = Some(here.flip());
                            queue.push_back(g);
                        }
                        Some(col) if col == here => {
                            return Err(Error::InvalidDiagram(format!(
                                "faces {f} and {g} are adjacent but cannot be shaded apart"
                            )));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    debug_assert!(d.crossings.is_empty() || colors.iter().all(Option::is_some));
    Ok(Shading { colors: colors.into_iter().map(|c| c.expect("every face reached")).collect(), outer })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingSigns {
    pub writhe: Vec<i8>,
    pub epsilon: Vec<i8>,
}

pub fn signs(d: &PdDiagram, faces: &FaceSet, shading: &Shading) -> CrossingSigns {
    let epsilon = (0..d.crossings.len())
        .map(|c| if shading.is_shaded(faces.face_of[c][0]) { 1 } else { -1 })
        .collect();
    CrossingSigns { writhe: d.writhe.clone(), epsilon }
}

/// Everything derived from a diagram that the invariants need.
#[derive(Clone, Debug)]
pub struct PreparedDiagram {
    pub diagram: PdDiagram,
    pub arcs: ArcSet,
    pub faces: FaceSet,
    pub shading: Shading,
    pub signs: CrossingSigns,
}

impl PreparedDiagram {
    pub fn new(diagram: PdDiagram, outer_face: Option<usize>) -> Result<Self> {
        let arcs = arcs(&diagram);
        let faces = faces(&diagram)?;
        let shading = checkerboard(&diagram, &faces, outer_face)?;
        let signs = signs(&diagram, &faces, &shading);
        Ok(Self { diagram, arcs, faces, shading, signs })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_pd(text)?, None)
    }

    pub fn with_shading(&self, shading: Shading) -> Self {
        let signs = signs(&self.diagram, &self.faces, &shading);
        Self { shading, signs, ..self.clone() }
    }

    pub fn bundle(&self) -> DiagramBundle {
        DiagramBundle {
            crossings: self.diagram.crossings.iter().map(|x| x.to_vec()).collect(),
            loops: self.diagram.loops.clone(),
            outer_face: self.shading.outer.first().copied(),
        }
    }
}

/// Export document `{"crossings": [[1,4,2,5], ...], "outer_face": 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramBundle {
    pub crossings: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub loops: Vec<usize>,
    pub outer_face: Option<usize>,
}

impl DiagramBundle {
    pub fn prepare(&self) -> Result<PreparedDiagram> {
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                <[usize; 4]>::try_from(x.as_slice())
                    .map_err(|_| Error::PdParse(format!("crossing {x:?} needs 4 edge ids")))
            })
            .collect::<Result<Vec<_>>>()?;
        if crossings.iter().flatten().chain(&self.loops).any(|&e| e == 0) {
            return Err(Error::PdParse("edge ids are 1-based".into()));
        }
        if crossings.is_empty() && self.loops.is_empty() {
            return Err(Error::PdParse("empty diagram".into()));
        }
        PreparedDiagram::new(build(crossings, self.loops.clone())?, self.outer_face)
    }
}

/// Names of the bundled diagrams.
pub const CORPUS: &[(&str, &str)] = &[
    ("trefoil", include_str!("../diagrams/trefoil.pd")),
    ("figure8", include_str!("../diagrams/figure8.pd")),
    ("5_1", include_str!("../diagrams/5_1.pd")),
    ("5_2", include_str!("../diagrams/5_2.pd")),
    ("trefoil_kinked", include_str!("../diagrams/trefoil_kinked.pd")),
    ("figure8_kinked", include_str!("../diagrams/figure8_kinked.pd")),
    ("hopf", include_str!("../diagrams/hopf.pd")),
    ("borromean", include_str!("../diagrams/borromean.pd")),
    ("unlink2", include_str!("../diagrams/unlink2.pd")),
    ("unlink3", include_str!("../diagrams/unlink3.pd")),
    ("unknot", include_str!("../diagrams/unknot.pd")),
];

/// Knots of the corpus used by the theorem sweeps.
pub const KNOT_CORPUS: &[&str] = &["trefoil", "figure8", "5_1", "5_2", "trefoil_kinked"];

fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn corpus_text(name: &str) -> Option<String> {
    let key = match name {
        "figure-8" | "figure_8" | "4_1" => "figure8",
        "3_1" => "trefoil",
        other => other,
    };
    CORPUS.iter().find(|(n, _)| *n == key).map(|(_, t)| strip_comments(t))
}

pub fn corpus_diagram(name: &str) -> Result<PreparedDiagram> {
    let text = corpus_text(name)
        .ok_or_else(|| Error::InvalidDiagram(format!("no corpus diagram named `{name}`")))?;
    PreparedDiagram::parse(&text)
}

/// Parses PD text, ignoring `#` comments.
pub fn parse_pd_file_text(text: &str) -> Result<PdDiagram> {
    parse_pd(&strip_comments(text))
}

/// Counts of the structure sizes, handy for reports.
pub fn summary(p: &PreparedDiagram) -> BTreeMap<&'static str, usize> {
    BTreeMap::from([
        ("crossings", p.diagram.crossing_count()),
        ("edges", p.diagram.edge_count()),
        ("components", p.diagram.components().len()),
        ("arcs", p.arcs.len()),
        ("faces", p.faces.len()),
    ])
}
