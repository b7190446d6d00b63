//! Plot-ready mesh of the state tetrahedron, the separable octahedron and
//! the Werner line.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polyhedron {
    pub labels: Vec<&'static str>,
    pub vertices: Vec<[f64; 3]>,
    /// Vertex indices, counter-clockwise seen from outside.
    pub facets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledPoint {
    pub label: &'static str,
    pub point: [f64; 3],
    /// Werner mixing parameter at this point.
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WernerSegment {
    pub from: LabeledPoint,
    pub to: LabeledPoint,
    /// Where the segment leaves the octahedron.
    pub separable_boundary: LabeledPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mesh {
    pub tetrahedron: Polyhedron,
    pub octahedron: Polyhedron,
    pub werner_segment: WernerSegment,
}

pub fn mesh() -> Mesh {
    let tetrahedron = Polyhedron {
        labels: vec!["A", "B", "C", "D"],
        vertices: vec![[-1.0, -1.0, -1.0], [1.0, 1.0, -1.0], [1.0, -1.0, 1.0], [-1.0, 1.0, 1.0]],
        facets: vec![vec![1, 3, 2], vec![0, 2, 3], vec![0, 3, 1], vec![0, 1, 2]],
    };
    let octahedron = Polyhedron {
        labels: vec!["+x", "-x", "+y", "-y", "+z", "-z"],
        vertices: vec![
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ],
        facets: vec![
            vec![0, 2, 4],
            vec![2, 1, 4],
            vec![1, 3, 4],
            vec![3, 0, 4],
            vec![2, 0, 5],
            vec![1, 2, 5],
            vec![3, 1, 5],
            vec![0, 3, 5],
        ],
    };
    let third = 1.0 / 3.0;
    Mesh {
        tetrahedron,
        octahedron,
        werner_segment: WernerSegment {
            from: LabeledPoint {
                label: "A",
                point: [-1.0, -1.0, -1.0],
                p: 1.0,
            },
            to: LabeledPoint {
                label: "E",
                point: [0.0, 0.0, 0.0],
                p: 0.0,
            },
            separable_boundary: LabeledPoint {
                label: "W",
                point: [-third, -third, -third],
                p: third,
            },
        },
    }
}
