//! A randomized balanced search tree ordered by an external comparator.
//!
//! The sweep status cannot use `BTreeMap`: its order depends on the sweep
//! position and comparisons may fail. Every operation here takes a probe
//! closure that compares a stored value against the key being looked up,
//! returning `Less` when the stored value precedes the key.

use std::cmp::Ordering;

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Node<T> {
    value: T,
    priority: u64,
    left: u32,
    right: u32,
}

#[derive(Debug, Clone)]
pub(crate) struct Treap<T> {
    nodes: Vec<Node<T>>,
    free: Vec<u32>,
    root: u32,
    len: usize,
    state: u64,
}

impl<T: Copy> Default for Treap<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Copy> Treap<T> {
    pub fn new() -> Self {
        Treap { nodes: Vec::new(), free: Vec::new(), root: NIL, len: 0, state: 0x9E37_79B9_7F4A_7C15 }
    }

    pub fn with_capacity(n: usize) -> Self {
        Treap { nodes: Vec::with_capacity(n), ..Self::new() }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    // splitmix64
    fn next_priority(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn alloc(&mut self, value: T) -> u32 {
        let node = Node { value, priority: self.next_priority(), left: NIL, right: NIL };
        match self.free.pop() {
            Some(i) => {
                self.nodes[i as usize] = node;
                i
            }
            None => {
                self.nodes.push(node);
                (self.nodes.len() - 1) as u32
            }
        }
    }

    /// Inserts `value` and returns its predecessor, if any.
    pub fn insert<E>(
        &mut self,
        value: T,
        mut probe: impl FnMut(&T) -> Result<Ordering, E>,
    ) -> Result<Option<T>, E> {
        let (l, r) = self.split(self.root, &mut probe)?;
        let pred = self.rightmost(l).map(|i| self.nodes[i as usize].value);
        let n = self.alloc(value);
        let left = self.merge(l, n);
        self.root = self.merge(left, r);
        self.len += 1;
        Ok(pred)
    }

    /// Removes the stored value for which `probe` returns `Equal`.
    pub fn remove<E>(&mut self, mut probe: impl FnMut(&T) -> Result<Ordering, E>) -> Result<Option<T>, E> {
        let mut removed = None;
        self.root = self.remove_in(self.root, &mut probe, &mut removed)?;
        if removed.is_some() {
            self.len -= 1;
        }
        Ok(removed)
    }

    /// The greatest stored value strictly preceding the probe key.
    pub fn predecessor<E>(&self, mut probe: impl FnMut(&T) -> Result<Ordering, E>) -> Result<Option<T>, E> {
        let mut cur = self.root;
        let mut best = None;
        while cur != NIL {
            let node = &self.nodes[cur as usize];
            if probe(&node.value)? == Ordering::Less {
                best = Some(node.value);
                cur = node.right;
            } else {
                cur = node.left;
            }
        }
        Ok(best)
    }

    /// Values in order.
    pub fn to_vec(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.len);
        let mut stack = Vec::new();
        let mut cur = self.root;
        while cur != NIL || !stack.is_empty() {
            while cur != NIL {
                stack.push(cur);
                cur = self.nodes[cur as usize].left;
            }
            let n = stack.pop().expect("non-empty stack");
            out.push(self.nodes[n as usize].value);
            cur = self.nodes[n as usize].right;
        }
        out
    }

    fn rightmost(&self, mut t: u32) -> Option<u32> {
        if t == NIL {
            return None;
        }
        while self.nodes[t as usize].right != NIL {
            t = self.nodes[t as usize].right;
        }
        Some(t)
    }

    /// Splits `t` into values preceding the probe key and values following it.
    fn split<E>(&mut self, t: u32, probe: &mut impl FnMut(&T) -> Result<Ordering, E>) -> Result<(u32, u32), E> {
        if t == NIL {
            return Ok((NIL, NIL));
        }
        let ord = probe(&self.nodes[t as usize].value)?;
        debug_assert!(ord != Ordering::Equal, "value already present");
        if ord == Ordering::Less {
            let (l, r) = self.split(self.nodes[t as usize].right, probe)?;
            self.nodes[t as usize].right = l;
            Ok((t, r))
        } else {
            let (l, r) = self.split(self.nodes[t as usize].left, probe)?;
            self.nodes[t as usize].left = r;
            Ok((l, t))
        }
    }

    fn merge(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        if self.nodes[a as usize].priority > self.nodes[b as usize].priority {
            let r = self.merge(self.nodes[a as usize].right, b);
            self.nodes[a as usize].right = r;
            a
        } else {
            let l = self.merge(a, self.nodes[b as usize].left);
            self.nodes[b as usize].left = l;
            b
        }
    }

    fn remove_in<E>(
        &mut self,
        t: u32,
        probe: &mut impl FnMut(&T) -> Result<Ordering, E>,
        removed: &mut Option<T>,
    ) -> Result<u32, E> {
        if t == NIL {
            return Ok(NIL);
        }
        match probe(&self.nodes[t as usize].value)? {
            Ordering::Equal => {
                let Node { value, left, right, .. } = self.nodes[t as usize];
                *removed = Some(value);
                self.free.push(t);
                Ok(self.merge(left, right))
            }
            Ordering::Less => {
                let r = self.remove_in(self.nodes[t as usize].right, probe, removed)?;
                self.nodes[t as usize].right = r;
                Ok(t)
            }
            Ordering::Greater => {
                let l = self.remove_in(self.nodes[t as usize].left, probe, removed)?;
                self.nodes[t as usize].left = l;
                Ok(t)
            }
        }
    }
}
