//! JSON input descriptors for the command-line interface and embeddings.

use serde::{Deserialize, Serialize};

use crate::exact::lattice::{LatticeError, LatticeMap};
use crate::perm::{generate_group, parse_permutation, FiniteGroup, PermError};
use crate::tree::{validate_colored_graph, ColoredGraph, ColoredGraphError, GraphIsometry, Tree, TreeError};

/// `{ "degree": n, "generators": ["(1 2 3)", "(1 2)(4 5)"] }`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupDescriptor {
    pub fn build(&self, cap: usize) -> Result<FiniteGroup, PermError> {
        let gens = self
            .generators
            .iter()
            .map(|s| parse_permutation(s, self.degree))
            .collect::<Result<Vec<_>, _>>()?;
        if gens.is_empty() {
            return Ok(FiniteGroup::trivial(self.degree));
        }
        generate_group(&gens, cap)
    }
}

/// `{ "n": 5, "edges": [[1,2],[2,3],...], "generators": [{"images": [...]}] }`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TreeDescriptor {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default)]
    pub generators: Vec<IsometryDescriptor>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsometryDescriptor {
    pub images: Vec<usize>,
}

impl TreeDescriptor {
    pub fn build(&self) -> Result<(Tree, Vec<GraphIsometry>), TreeError> {
        let tree = Tree::new(self.n, &self.edges)?;
        let gens = self
            .generators
            .iter()
            .map(|g| GraphIsometry::new(&tree, g.images.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((tree, gens))
    }
}

/// Tree descriptor plus per-edge colors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ColoredGraphDescriptor {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub colors: Vec<usize>,
    #[serde(default)]
    pub generators: Vec<IsometryDescriptor>,
}

impl ColoredGraphDescriptor {
    pub fn build(&self) -> Result<(ColoredGraph, Vec<GraphIsometry>), ColoredGraphError> {
        let graph = validate_colored_graph(self.n, &self.edges, &self.colors)?;
        let gens = self
            .generators
            .iter()
            .map(|g| graph.isometry(g.images.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((graph, gens))
    }
}

/// Lattice isometries of Z^n as integer matrices plus translations.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeGroupDescriptor {
    pub dim: usize,
    pub generators: Vec<LatticeMapDescriptor>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeMapDescriptor {
    pub linear: Vec<Vec<i64>>,
    pub translation: Vec<i64>,
}

impl LatticeGroupDescriptor {
    pub fn build(&self) -> Result<Vec<LatticeMap>, LatticeError> {
        self.generators
            .iter()
            .map(|g| LatticeMap::from_ints(&g.linear, &g.translation))
            .collect()
    }
}

/// Point list for circumcenter queries.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointsDescriptor {
    pub points: Vec<Vec<f64>>,
}

/// A 2×2 real matrix for isometry classification.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixDescriptor {
    pub matrix: [[f64; 2]; 2],
}

/// A word over named generators with integer exponents,
/// e.g. `[["A", 1], ["B", -2]]`.
pub type WordDescriptor = Vec<(String, i64)>;

/// Exact scalar in JSON: an integer, a fraction `"p/q"`, or `"u+v√d"`.
pub fn parse_scalar(text: &str) -> Option<crate::exact::scalar::QuadRat> {
    use crate::exact::scalar::QuadRat;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let parse_rat = |s: &str| -> Option<BigRational> {
        if let Some((p, q)) = s.split_once('/') {
            Some(BigRational::new(p.parse::<BigInt>().ok()?, q.parse::<BigInt>().ok()?))
        } else {
            Some(BigRational::from_integer(s.parse::<BigInt>().ok()?))
        }
    };
    if let Some(pos) = t.find('√') {
        let d: i64 = t[pos + '√'.len_utf8()..].parse().ok()?;
        let head = &t[..pos];
        // forms: "√d", "v√d", "u+v√d", "u-v√d"
        let (u_str, v_str) = match head.rfind(['+', '-']) {
            Some(0) | None => ("0", if head.is_empty() { "1" } else { head }),
            Some(i) => (&head[..i], &head[i..]),
        };
        let v_str = match v_str {
            "" | "+" => "1",
            "-" => "-1",
            s => s,
        };
        Some(QuadRat::new(parse_rat(u_str)?, parse_rat(v_str)?, d))
    } else {
        Some(QuadRat::rational(parse_rat(&t)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{big_rational, ExactField, QuadRat};

    #[test]
    fn group_descriptor_round_trip() {
        let json = r#"{ "degree": 5, "generators": ["(1 2 3)", "(1 2)(4 5)"] }"#;
        let d: GroupDescriptor = serde_json::from_str(json).unwrap();
        let g = d.build(1000).unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn tree_descriptor_round_trip() {
        let json = r#"{ "n": 5, "edges": [[1,2],[2,3],[3,4],[4,5]],
                        "generators": [{"images": [5,4,3,2,1]}] }"#;
        let d: TreeDescriptor = serde_json::from_str(json).unwrap();
        let (tree, gens) = d.build().unwrap();
        assert_eq!(tree.vertex_count(), 5);
        assert_eq!(gens.len(), 1);
    }

    #[test]
    fn scalar_parsing() {
        assert_eq!(parse_scalar("7").unwrap(), QuadRat::from_int(7));
        assert_eq!(
            parse_scalar("-3/4").unwrap(),
            QuadRat::rational(big_rational(-3, 4))
        );
        assert_eq!(
            parse_scalar("1+2√2").unwrap(),
            QuadRat::new(big_rational(1, 1), big_rational(2, 1), 2)
        );
        assert_eq!(
            parse_scalar("√2").unwrap(),
            QuadRat::new(big_rational(0, 1), big_rational(1, 1), 2)
        );
        assert_eq!(
            parse_scalar("1/2-3/4√5").unwrap(),
            QuadRat::new(big_rational(1, 2), big_rational(-3, 4), 5)
        );
    }

    #[test]
    fn geodesic_descriptor_parses() {
        use crate::geo::point::H2Geodesic;
        let v: H2Geodesic = serde_json::from_str(r#"{"kind":"vertical","foot":1.5}"#).unwrap();
        assert_eq!(v, H2Geodesic::Vertical { foot: 1.5 });
        let c: H2Geodesic =
            serde_json::from_str(r#"{"kind":"circle","center":0.0,"radius":2.0}"#).unwrap();
        assert_eq!(
            c,
            H2Geodesic::Circle {
                center: 0.0,
                radius: 2.0
            }
        );
    }
}
