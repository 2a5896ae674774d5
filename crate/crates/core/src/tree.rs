//! Immutable parent-array trees.

use alloc::vec;
use alloc::vec::Vec;

/// Node identifier, `0..node_count`.
pub type NodeId = usize;

const NO_PARENT: NodeId = NodeId::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("tree has no nodes")]
    Empty,
    #[error("no root: every node has a parent")]
    NoRoot,
    #[error("multiple roots: nodes {first} and {second} both have no parent")]
    MultipleRoots { first: NodeId, second: NodeId },
    #[error("parent of node {node} is {parent}, outside 0..{node_count}")]
    ParentOutOfRange {
        node: NodeId,
        parent: NodeId,
        node_count: usize,
    },
    #[error("cycle detected through node {node}")]
    Cycle { node: NodeId },
}

/// A rooted tree stored as a parent array plus a derived child adjacency.
///
/// Children of each node are kept in increasing id order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    parent: Vec<NodeId>,
    root: NodeId,
    child_start: Vec<usize>,
    child_list: Vec<NodeId>,
}

impl RootedTree {
    /// Builds a tree from `parents[v]`, where `None` marks the root.
    pub fn from_parents(parents: &[Option<NodeId>]) -> Result<Self, TreeError> {
        let n = parents.len();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let mut root = None;
        let mut parent = Vec::with_capacity(n);
        for (v, p) in parents.iter().enumerate() {
            match *p {
                None => match root {
                    None => {
                        root = Some(v);
                        parent.push(NO_PARENT);
                    }
                    Some(first) => return Err(TreeError::MultipleRoots { first, second: v }),
                },
                Some(p) if p >= n => {
                    return Err(TreeError::ParentOutOfRange {
                        node: v,
                        parent: p,
                        node_count: n,
                    })
                }
                Some(p) => parent.push(p),
            }
        }
        let root = root.ok_or(TreeError::NoRoot)?;

        // Counting sort of nodes by parent keeps each child list in id order.
        let mut child_start = vec![0usize; n + 1];
        for &p in &parent {
            if p != NO_PARENT {
                child_start[p + 1] += 1;
            }
        }
        for i in 0..n {
            child_start[i + 1] += child_start[i];
        }
        let mut fill = child_start.clone();
        let mut child_list = vec![0; n - 1];
        for (v, &p) in parent.iter().enumerate() {
            if p != NO_PARENT {
                child_list[fill[p]] = v;
                fill[p] += 1;
            }
        }

        let tree = RootedTree {
            parent,
            root,
            child_start,
            child_list,
        };
        tree.check_connected()?;
        Ok(tree)
    }

    /// Builds a tree from a parent array whose root entry is `-1`.
    pub fn from_signed_parents(parents: &[i64]) -> Result<Self, TreeError> {
        let n = parents.len();
        let mut converted = Vec::with_capacity(n);
        for (v, &p) in parents.iter().enumerate() {
            if p == -1 {
                converted.push(None);
            } else if p < 0 {
                return Err(TreeError::ParentOutOfRange {
                    node: v,
                    parent: NodeId::MAX,
                    node_count: n,
                });
            } else {
                converted.push(Some(p as NodeId));
            }
        }
        Self::from_parents(&converted)
    }

    fn check_connected(&self) -> Result<(), TreeError> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut stack = vec![self.root];
        let mut reached = 0;
        while let Some(v) = stack.pop() {
            seen[v] = true;
            reached += 1;
            stack.extend_from_slice(self.children(v));
        }
        if reached == n {
            return Ok(());
        }
        // Some node is cut off from the root, so its parent chain enters a cycle.
        let start = seen.iter().position(|s| !s).unwrap_or(0);
        let mut on_walk = vec![false; n];
        let mut v = start;
        while !on_walk[v] {
            on_walk[v] = true;
            v = self.parent[v];
        }
        let mut smallest = v;
        let mut w = self.parent[v];
        while w != v {
            smallest = smallest.min(w);
            w = self.parent[w];
        }
        Err(TreeError::Cycle { node: smallest })
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        match self.parent[v] {
            NO_PARENT => None,
            p => Some(p),
        }
    }

    /// Children of `v` in increasing id order.
    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.child_list[self.child_start[v]..self.child_start[v + 1]]
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.child_start[v] == self.child_start[v + 1]
    }

    pub fn nodes(&self) -> core::ops::Range<NodeId> {
        0..self.node_count()
    }

    /// Parent array with `None` at the root.
    pub fn parents(&self) -> Vec<Option<NodeId>> {
        self.nodes().map(|v| self.parent(v)).collect()
    }

    /// Parent array with `-1` at the root, as used by the text format.
    pub fn signed_parents(&self) -> Vec<i64> {
        self.nodes()
            .map(|v| self.parent(v).map_or(-1, |p| p as i64))
            .collect()
    }

    /// Nodes in breadth-first order from the root; parents precede children.
    pub fn bfs_order(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.node_count());
        order.push(self.root);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            order.extend_from_slice(self.children(v));
        }
        order
    }

    /// Copy of the tree with nodes renumbered in breadth-first order, plus
    /// `order` with `order[new_id] = old_id`.
    ///
    /// Siblings keep their relative order, so every rule that breaks ties by
    /// smaller id among siblings gives the same answer on both trees. Children
    /// of each node get consecutive ids, which keeps later passes cache-local.
    pub fn bfs_renumbered(&self) -> (RootedTree, Vec<NodeId>) {
        let n = self.node_count();
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![NO_PARENT; n];
        let mut child_start = Vec::with_capacity(n + 1);
        order.push(self.root);
        let mut head = 0;
        while head < order.len() {
            let kids = self.children(order[head]);
            child_start.push(order.len() - 1);
            for p in &mut parent[order.len()..order.len() + kids.len()] {
                *p = head;
            }
            order.extend_from_slice(kids);
            head += 1;
        }
        child_start.push(n - 1);
        let renumbered = RootedTree {
            parent,
            root: 0,
            child_start,
            child_list: (1..n).collect(),
        };
        (renumbered, order)
    }

    /// Removes leaf `leaf` and renumbers the remaining nodes densely,
    /// preserving relative id order. Returns `None` for the last node.
    pub fn without_leaf(&self, leaf: NodeId) -> Option<RootedTree> {
        if !self.is_leaf(leaf) || self.node_count() == 1 {
            return None;
        }
        let shift = |v: NodeId| if v > leaf { v - 1 } else { v };
        let parents: Vec<Option<NodeId>> = self
            .nodes()
            .filter(|&v| v != leaf)
            .map(|v| self.parent(v).map(shift))
            .collect();
        RootedTree::from_parents(&parents).ok()
    }
}
