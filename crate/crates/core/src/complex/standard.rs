//! Small named complexes used throughout the tests and the guide.
//!
//! Vertices are labelled by decimal integers unless noted.

use super::SimplicialComplex;

fn numbered(n: usize, offset: usize) -> Vec<String> {
    (offset..offset + n).map(|i| i.to_string()).collect()
}

/// `n` isolated points.
pub fn points(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_index_faces(numbered(n, 0), (0..n).map(|i| vec![i])).unwrap()
}

/// The full simplex on `k` vertices (a cone, hence acyclic for `k >= 1`).
pub fn full_simplex(k: usize) -> SimplicialComplex {
    SimplicialComplex::from_index_faces(numbered(k, 0), std::iter::once((0..k).collect())).unwrap()
}

/// Boundary of the `(k-1)`-simplex: every proper subset of `k` vertices.
pub fn simplex_boundary(k: usize) -> SimplicialComplex {
    let facets = (0..k).map(|skip| (0..k).filter(|&i| i != skip).collect());
    SimplicialComplex::from_index_faces(numbered(k, 0), facets).unwrap()
}

/// The `n`-cycle graph as a 1-dimensional complex (flag for `n >= 4`).
pub fn cycle(n: usize) -> SimplicialComplex {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut faces: Vec<Vec<usize>> = edges
        .iter()
        .map(|&(a, b)| if a < b { vec![a, b] } else { vec![b, a] })
        .collect();
    faces.extend((0..n).map(|i| vec![i]));
    SimplicialComplex::from_index_faces(numbered(n, 0), faces.into_iter()).unwrap()
}

/// Boundary of the octahedron: a flag 2-sphere on six vertices, with
/// antipodal pairs `{0,1}`, `{2,3}`, `{4,5}`.
pub fn octahedron() -> SimplicialComplex {
    let mut facets = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                facets.push(vec![a, b, c]);
            }
        }
    }
    SimplicialComplex::from_index_faces(numbered(6, 0), facets.into_iter()).unwrap()
}

/// The minimal six-vertex triangulation of the real projective plane,
/// vertices labelled `1..=6`. It is not flag.
pub fn rp2_six_vertex() -> SimplicialComplex {
    let facets: [[usize; 3]; 10] = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 2, 6],
        [2, 3, 5],
        [3, 4, 6],
        [2, 4, 5],
        [3, 5, 6],
        [2, 4, 6],
    ];
    let faces = facets.iter().map(|f| f.iter().map(|v| v - 1).collect());
    SimplicialComplex::from_index_faces(numbered(6, 1), faces).unwrap()
}

/// A flag triangulation of the real projective plane: the barycentric
/// subdivision of [`rp2_six_vertex`] (31 vertices).
pub fn flag_rp2() -> SimplicialComplex {
    rp2_six_vertex().barycentric_subdivision()
}
