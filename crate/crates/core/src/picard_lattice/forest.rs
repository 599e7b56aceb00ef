use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::DivisorClass;
use crate::error::{Error, Result};
use crate::linalg::solve_integral;

/// Where a blowup center lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parent {
    /// A point of the minimal surface, by base-point id.
    Base(u32),
    /// A point on the exceptional curve of an earlier blowup (0-based index).
    Node(usize),
}

impl fmt::Display for Parent {
    /// `base:ID` or `node:K` with `K` counted from 1 like `e_K`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parent::Base(id) => write!(f, "base:{id}"),
            Parent::Node(j) => write!(f, "node:{}", j + 1),
        }
    }
}

impl FromStr for Parent {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let err = || Error::Parse(format!("point `{text}`: expected `base:ID` or `node:K`"));
        let (kind, value) = text.trim().split_once(':').ok_or_else(err)?;
        match kind.trim() {
            "base" => value.trim().parse().map(Parent::Base).map_err(|_| err()),
            "node" => match value.trim().parse::<usize>() {
                Ok(k) if k >= 1 => Ok(Parent::Node(k - 1)),
                _ => Err(err()),
            },
            _ => Err(err()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupNode {
    pub parent: Parent,
    pub on_anticanonical: bool,
    /// Multiplicity of the (strict transform of the) anticanonical curve at
    /// the center.
    pub anticanonical_multiplicity: u32,
}

impl BlowupNode {
    /// A center on the anticanonical curve with the given multiplicity.
    pub fn on_curve(parent: Parent, multiplicity: u32) -> Self {
        BlowupNode {
            parent,
            on_anticanonical: true,
            anticanonical_multiplicity: multiplicity,
        }
    }

    pub fn off_curve(parent: Parent) -> Self {
        BlowupNode {
            parent,
            on_anticanonical: false,
            anticanonical_multiplicity: 0,
        }
    }
}

/// Ordered blowups; a point infinitely near blowup `j` has parent `Node(j)`
/// with `j` strictly smaller than its own index.
///
/// Proximity is parent-only: blowup `i` is proximate to its parent and
/// nothing else, so the strict transform of the i-th exceptional curve is
/// `e_i - sum_{children j} e_j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BlowupForest {
    nodes: Vec<BlowupNode>,
}

/// An irreducible exceptional curve together with its derived classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalComponent {
    pub index: usize,
    /// Strict transform `f`.
    pub class_f: DivisorClass,
    /// Dual class: `f_dual . g = -delta(f, g)` over components `g`.
    pub class_f_dual: DivisorClass,
    /// The orthonormal divisor `e_f` (total transform).
    pub class_e_f: DivisorClass,
}

impl BlowupForest {
    /// Builds a forest, checking only the ordering of node parents. Surface
    /// level checks (base points, multiplicities) live in `SurfaceModel`.
    pub fn new(nodes: Vec<BlowupNode>) -> Result<Self> {
        for (i, node) in nodes.iter().enumerate() {
            if let Parent::Node(j) = node.parent {
                if j >= i {
                    return Err(Error::InvalidParent { node: i, parent: j });
                }
            }
        }
        Ok(BlowupForest { nodes })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[BlowupNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> Option<&BlowupNode> {
        self.nodes.get(i)
    }

    pub(crate) fn push(&mut self, node: BlowupNode) {
        self.nodes.push(node);
    }

    pub fn children(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(move |(_, n)| n.parent == Parent::Node(i))
            .map(|(j, _)| j)
    }

    /// Nodes from the root of `i`'s tree down to `i`, inclusive.
    pub fn path_to(&self, i: usize) -> Vec<usize> {
        let mut path = vec![i];
        let mut cur = i;
        while let Parent::Node(j) = self.nodes[cur].parent {
            path.push(j);
            cur = j;
        }
        path.reverse();
        path
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownComponent(i))
        }
    }

    /// `e_i - sum_{parent(j) = i} e_j`.
    pub fn component_class(&self, i: usize) -> Result<DivisorClass> {
        self.check_index(i)?;
        let mut d = DivisorClass::exceptional(i, self.len());
        for j in self.children(i) {
            d.e[j] -= 1;
        }
        Ok(d)
    }

    pub fn orthonormal_divisor(&self, i: usize) -> Result<DivisorClass> {
        self.check_index(i)?;
        Ok(DivisorClass::exceptional(i, self.len()))
    }

    /// `e_pi = sum_i e_i`, the relative canonical divisor over the minimal
    /// surface.
    pub fn e_pi(&self) -> DivisorClass {
        DivisorClass::from_exceptional(vec![1; self.len()])
    }

    /// Coordinates of an exceptional-supported class in the basis of
    /// component classes `{f_1..f_n}`.
    pub fn component_coordinates(&self, d: &DivisorClass) -> Result<Vec<i64>> {
        if d.n() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: d.n(),
            });
        }
        if !d.is_exceptional_supported() {
            return Err(Error::NotExceptional(d.to_string()));
        }
        let n = self.len();
        // column k holds the e-coordinates of f_k
        let columns = (0..n)
            .map(|k| self.component_class(k))
            .collect::<Result<Vec<_>>>()?;
        let matrix: Vec<Vec<i64>> = (0..n)
            .map(|row| columns.iter().map(|f| f.e[row]).collect())
            .collect();
        solve_integral(&matrix, &d.e).map_err(|e| match e {
            Error::NonIntegral(_) => Error::NonIntegral(d.to_string()),
            other => other,
        })
    }

    /// Solves `x . f_k = -delta(i, k)` for `x` in the exceptional span and
    /// checks that the solution is effective.
    pub fn dual_class(&self, i: usize) -> Result<DivisorClass> {
        self.check_index(i)?;
        let n = self.len();
        // (sum_j x_j e_j) . f_k = -sum_j x_j [f_k]_j
        let matrix: Vec<Vec<i64>> = (0..n)
            .map(|k| {
                self.component_class(k)
                    .map(|f| f.e.iter().map(|c| -c).collect())
            })
            .collect::<Result<_>>()?;
        let rhs: Vec<i64> = (0..n).map(|k| if k == i { -1 } else { 0 }).collect();
        let x = solve_integral(&matrix, &rhs)?;
        let dual = DivisorClass::from_exceptional(x);
        let coords = self.component_coordinates(&dual)?;
        if let Some(k) = coords.iter().position(|&c| c < 0) {
            return Err(Error::NotEffective {
                class: dual.to_string(),
                component: k + 1,
            });
        }
        Ok(dual)
    }

    pub fn component(&self, i: usize) -> Result<ExceptionalComponent> {
        Ok(ExceptionalComponent {
            index: i,
            class_f: self.component_class(i)?,
            class_f_dual: self.dual_class(i)?,
            class_e_f: self.orthonormal_divisor(i)?,
        })
    }

    pub fn components(&self) -> Result<Vec<ExceptionalComponent>> {
        (0..self.len()).map(|i| self.component(i)).collect()
    }
}

/// The negative-definite form on the exceptional span: `e_i . e_j = -delta`.
pub(crate) fn exceptional_dot(a: &[i64], b: &[i64]) -> i64 {
    -a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>()
}
