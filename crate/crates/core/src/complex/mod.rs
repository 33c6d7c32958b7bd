//! Finite simplicial complexes with the empty face as a first-class simplex.
//!
//! Vertices carry string labels and a fixed global order (their position in
//! the vertex list). A simplex is the strictly increasing list of its vertex
//! positions, and every sign in a boundary map is read off that order.
//! Homology is reduced unless stated otherwise: the empty face spans the
//! chain group in degree `-1`, so the empty complex has `b̃_{-1} = 1`.

mod chain;
mod homology;
mod io;
pub mod standard;

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

pub use chain::{ChainVector, OrderedSimplex};
pub use homology::{HomologyProfile, IntegralHomology};
pub use io::{ComplexJson, LabelJson};

/// Sorted vertex positions of a simplex within its complex.
pub type Simplex = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex label {0:?}")]
    UnknownVertex(String),
    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),
    #[error("simplex {0:?} is not a face of the complex")]
    NotAFace(Vec<String>),
    #[error("complex is not flag: {0:?} spans a clique but is not a face")]
    NotFlag(Vec<String>),
    #[error("malformed complex description: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    /// `faces[d + 1]` lists the `d`-simplices in lexicographic order.
    faces: Vec<Vec<Simplex>>,
    position: HashMap<Simplex, usize>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.faces == other.faces
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::from_index_faces(Vec::new(), std::iter::empty()).expect("empty complex is valid")
    }

    /// Downward closure of the given faces, with vertices in the order listed.
    pub fn from_faces<S: AsRef<str>>(
        vertices: &[S],
        faces: &[Vec<S>],
    ) -> Result<Self, ComplexError> {
        let labels = check_labels(vertices)?;
        let index: HashMap<&str, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut simplices = Vec::with_capacity(faces.len() + labels.len());
        for f in faces {
            let mut s = Vec::with_capacity(f.len());
            for l in f {
                let l = l.as_ref();
                s.push(*index.get(l).ok_or_else(|| ComplexError::UnknownVertex(l.to_string()))?);
            }
            s.sort_unstable();
            s.dedup();
            simplices.push(s);
        }
        for i in 0..labels.len() {
            simplices.push(vec![i]);
        }
        Self::from_index_faces(labels, simplices.into_iter())
    }

    /// The flag (clique) complex of a simple graph.
    pub fn flag_completion<S: AsRef<str>>(
        vertices: &[S],
        edges: &[(S, S)],
    ) -> Result<Self, ComplexError> {
        let labels = check_labels(vertices)?;
        let index: HashMap<&str, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index.get(a).ok_or_else(|| ComplexError::UnknownVertex(a.to_string()))?;
            let ib = *index.get(b).ok_or_else(|| ComplexError::UnknownVertex(b.to_string()))?;
            if ia == ib {
                return Err(ComplexError::SelfLoop(a.to_string()));
            }
            pairs.push((ia, ib));
        }
        Ok(Self::clique_complex(labels, &pairs))
    }

    pub(crate) fn clique_complex(labels: Vec<String>, edges: &[(usize, usize)]) -> Self {
        let n = labels.len();
        let mut higher: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(a, b) in edges {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            higher[lo].insert(hi);
        }
        let mut cliques = Vec::new();
        let mut stack: Vec<(Simplex, Vec<usize>)> =
            (0..n).map(|v| (vec![v], higher[v].iter().copied().collect())).collect();
        while let Some((clique, candidates)) = stack.pop() {
            for (k, &w) in candidates.iter().enumerate() {
                let next: Vec<usize> =
                    candidates[k + 1..].iter().copied().filter(|x| higher[w].contains(x)).collect();
                let mut c = clique.clone();
                c.push(w);
                stack.push((c, next));
            }
            cliques.push(clique);
        }
        Self::from_index_faces(labels, cliques.into_iter()).expect("cliques are closed")
    }

    /// Builds from sorted index simplices, adding all their subsets.
    pub(crate) fn from_index_faces(
        labels: Vec<String>,
        simplices: impl Iterator<Item = Simplex>,
    ) -> Result<Self, ComplexError> {
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        all.insert(Vec::new());
        for s in simplices {
            if all.contains(&s) {
                continue;
            }
            // enumerate subsets; simplices here are small
            let k = s.len();
            assert!(k < 32, "simplex too large");
            for mask in 1u32..(1u32 << k) {
                let sub: Simplex = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                all.insert(sub);
            }
        }
        let dim_max = all.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut faces: Vec<Vec<Simplex>> = vec![Vec::new(); dim_max + 1];
        for s in all {
            faces[s.len()].push(s);
        }
        for layer in faces.iter_mut() {
            layer.sort();
        }
        let mut position = HashMap::new();
        for layer in &faces {
            for (i, s) in layer.iter().enumerate() {
                position.insert(s.clone(), i);
            }
        }
        let label_index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Ok(SimplicialComplex { labels, label_index, faces, position })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// Dimension, with `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 2
    }

    /// The `d`-simplices in lexicographic order (`d = -1` gives the empty face).
    pub fn faces_of_dim(&self, d: isize) -> &[Simplex] {
        if d < -1 {
            return &[];
        }
        self.faces.get((d + 1) as usize).map_or(&[], |v| v.as_slice())
    }

    pub fn num_faces(&self, d: isize) -> usize {
        self.faces_of_dim(d).len()
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Simplex> {
        self.faces.iter().flatten()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.position.contains_key(s)
    }

    /// Position of a face within `faces_of_dim(s.len() - 1)`.
    pub fn face_position(&self, s: &[usize]) -> Option<usize> {
        self.position.get(s).copied()
    }

    pub fn simplex_labels(&self, s: &[usize]) -> Vec<String> {
        s.iter().map(|&v| self.labels[v].clone()).collect()
    }

    /// Resolves labels into a sorted simplex; `None` if some label is unknown.
    pub fn simplex_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Option<Simplex> {
        let mut s = labels
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Option<Vec<_>>>()?;
        s.sort_unstable();
        s.dedup();
        Some(s)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces_of_dim(1).iter().map(|e| (e[0], e[1])).collect()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        let e = if a < b { [a, b] } else { [b, a] };
        self.contains(&e)
    }

    /// Alternating face count, the empty face contributing `-1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        (-1..=self.dim())
            .map(|d| if d.rem_euclid(2) == 0 { 1 } else { -1 } * self.num_faces(d) as i64)
            .sum()
    }

    /// Whether every clique of the 1-skeleton is a face.
    pub fn is_flag(&self) -> bool {
        self.flag_violation().is_none()
    }

    fn flag_violation(&self) -> Option<Simplex> {
        let completion = Self::clique_complex(self.labels.clone(), &self.edges());
        let found = completion.all_faces().find(|s| !self.contains(s)).cloned();
        found
    }

    pub fn check_flag(&self) -> Result<(), ComplexError> {
        match self.flag_violation() {
            None => Ok(()),
            Some(s) => Err(ComplexError::NotFlag(self.simplex_labels(&s))),
        }
    }

    /// Rebuilds on a vertex subset (given as sorted positions), relabelling
    /// simplices of `self` into the new positions.
    fn restrict(&self, keep: &[usize], faces: impl Iterator<Item = Simplex>) -> SimplicialComplex {
        let mut new_pos = vec![usize::MAX; self.labels.len()];
        for (i, &v) in keep.iter().enumerate() {
            new_pos[v] = i;
        }
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let mapped = faces.map(|s| s.iter().map(|&v| new_pos[v]).collect::<Simplex>());
        SimplicialComplex::from_index_faces(labels, mapped).expect("subcomplex is closed")
    }

    /// The full subcomplex spanned by the given vertex positions.
    pub fn full_subcomplex(&self, vertices: &[usize]) -> SimplicialComplex {
        let mut keep = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut inside = vec![false; self.labels.len()];
        for &v in &keep {
            inside[v] = true;
        }
        let faces = self.all_faces().filter(|s| s.iter().all(|&v| inside[v])).cloned();
        self.restrict(&keep, faces.collect::<Vec<_>>().into_iter())
    }

    /// Vertex positions of `lk(s)`, in global order.
    pub fn link_vertices(&self, s: &[usize]) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|v| !s.contains(v))
            .filter(|&v| {
                let mut t = s.to_vec();
                t.push(v);
                t.sort_unstable();
                self.contains(&t)
            })
            .collect()
    }

    /// Faces of `lk(s)` expressed in this complex's vertex positions.
    pub fn link_faces(&self, s: &[usize]) -> Vec<Simplex> {
        self.all_faces()
            .filter(|f| s.iter().all(|v| f.contains(v)))
            .map(|f| f.iter().copied().filter(|v| !s.contains(v)).collect())
            .collect()
    }

    /// `lk(s) = { t : t ∩ s = ∅, t ∪ s ∈ K }` on the vertices it uses.
    pub fn link(&self, s: &[usize]) -> Result<SimplicialComplex, ComplexError> {
        if !self.contains(s) {
            let shown = s.iter().map(|&v| self.labels.get(v).cloned().unwrap_or_else(|| v.to_string()));
            return Err(ComplexError::NotAFace(shown.collect()));
        }
        if s.is_empty() {
            return Ok(self.clone());
        }
        let keep = self.link_vertices(s);
        Ok(self.restrict(&keep, self.link_faces(s).into_iter()))
    }

    /// `lk(s) ∩ K_W` for the full subcomplex `K_W` on the `allowed` positions.
    pub fn link_within(&self, s: &[usize], allowed: &[usize]) -> Result<SimplicialComplex, ComplexError> {
        if !self.contains(s) {
            return Err(ComplexError::NotAFace(self.simplex_labels(s)));
        }
        let mut ok = vec![false; self.labels.len()];
        for &v in allowed {
            ok[v] = true;
        }
        let keep: Vec<usize> = self.link_vertices(s).into_iter().filter(|&v| ok[v]).collect();
        let faces = self.link_faces(s).into_iter().filter(|f| f.iter().all(|&v| ok[v]));
        Ok(self.restrict(&keep, faces))
    }

    /// Closed star of `s`: all faces `f` with `f ∪ s` a face.
    pub fn star(&self, s: &[usize]) -> Result<SimplicialComplex, ComplexError> {
        if !self.contains(s) {
            return Err(ComplexError::NotAFace(self.simplex_labels(s)));
        }
        let faces: Vec<Simplex> = self
            .all_faces()
            .filter(|f| {
                let mut u: Vec<usize> = f.iter().chain(s.iter()).copied().collect();
                u.sort_unstable();
                u.dedup();
                self.contains(&u)
            })
            .cloned()
            .collect();
        let mut keep: Vec<usize> = faces.iter().flatten().copied().collect();
        keep.sort_unstable();
        keep.dedup();
        Ok(self.restrict(&keep, faces.into_iter()))
    }

    /// Cone over the complex with a new apex, appended last in the vertex order.
    pub fn cone(&self, apex: &str) -> Result<SimplicialComplex, ComplexError> {
        if self.index_of(apex).is_some() {
            return Err(ComplexError::DuplicateVertex(apex.to_string()));
        }
        let a = self.labels.len();
        let mut labels = self.labels.clone();
        labels.push(apex.to_string());
        let faces = self.all_faces().map(|f| {
            let mut g = f.clone();
            g.push(a);
            g
        });
        SimplicialComplex::from_index_faces(labels, faces)
    }

    /// Disjoint union; labels of `other` must not clash with ours.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
        let off = self.labels.len();
        let mut labels = self.labels.clone();
        for l in &other.labels {
            if self.index_of(l).is_some() {
                return Err(ComplexError::DuplicateVertex(l.clone()));
            }
            labels.push(l.clone());
        }
        let faces = self
            .all_faces()
            .cloned()
            .chain(other.all_faces().map(|f| f.iter().map(|v| v + off).collect()));
        SimplicialComplex::from_index_faces(labels, faces.collect::<Vec<_>>().into_iter())
    }

    /// Barycentric subdivision: one vertex per nonempty face, simplices are
    /// chains under inclusion. New vertices are ordered by dimension, then
    /// lexicographically, and labelled `[a,b,...]`.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        let nonempty: Vec<&Simplex> = self.faces.iter().skip(1).flatten().collect();
        let labels: Vec<String> =
            nonempty.iter().map(|s| format!("[{}]", self.simplex_labels(s).join(","))).collect();
        let mut edges = Vec::new();
        for (i, a) in nonempty.iter().enumerate() {
            for (j, b) in nonempty.iter().enumerate().skip(i + 1) {
                if b.len() > a.len() && a.iter().all(|v| b.contains(v)) {
                    edges.push((i, j));
                }
            }
        }
        Self::clique_complex(labels, &edges)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.labels.iter().cloned().map(LabelJson::Str).collect(),
            edges: None,
            faces: Some(
                self.maximal_faces()
                    .iter()
                    .map(|s| self.simplex_labels(s).into_iter().map(LabelJson::Str).collect())
                    .collect(),
            ),
        }
    }

    /// Faces not contained in a larger face, by dimension then lexicographically.
    pub fn maximal_faces(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<&Simplex> = BTreeSet::new();
        let mut out = Vec::new();
        for d in (0..=self.dim()).rev() {
            for s in self.faces_of_dim(d) {
                if !covered.contains(s) {
                    out.push(s.clone());
                }
                for i in 0..s.len() {
                    let mut t = s.clone();
                    t.remove(i);
                    if let Some(p) = self.face_position(&t) {
                        covered.insert(&self.faces[t.len()][p]);
                    }
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

fn check_labels<S: AsRef<str>>(vertices: &[S]) -> Result<Vec<String>, ComplexError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(vertices.len());
    for v in vertices {
        let v = v.as_ref().to_string();
        if !seen.insert(v.clone()) {
            return Err(ComplexError::DuplicateVertex(v));
        }
        out.push(v);
    }
    Ok(out)
}
