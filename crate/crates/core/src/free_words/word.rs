use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex, Weak};

use crate::error::{Error, Result};

/// A word in a free group, stored as a hash-consed DAG.
///
/// Structurally equal words are the same allocation, so equality and hashing
/// are by pointer and shared subwords (such as `c_5` inside `c_21`) are
/// evaluated once per assignment.
///
/// Every node carries two certificates: `weight`, with the word lying in
/// `γ_weight(F)`, and `depth`, with the word lying in `F^(depth)`.
#[derive(Clone)]
pub struct Word(Arc<Node>);

pub(crate) struct Node {
    kind: Kind,
    weight: u32,
    depth: u32,
}

#[derive(Clone)]
pub enum Kind {
    Gen(Arc<str>),
    Inv(Word),
    Prod(Word, Word),
    Comm(Word, Word),
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    Gen(Arc<str>),
    Inv(usize),
    Prod(usize, usize),
    Comm(usize, usize),
}

struct Interner {
    map: HashMap<Key, Weak<Node>>,
    sweep_at: usize,
}

static INTERNER: LazyLock<Mutex<Interner>> =
    LazyLock::new(|| Mutex::new(Interner { map: HashMap::new(), sweep_at: 1024 }));

impl Word {
    fn intern(key: Key, kind: impl FnOnce() -> Kind) -> Word {
        let mut guard = INTERNER.lock().unwrap_or_else(|e| e.into_inner());
        let table = &mut *guard;
        if table.map.len() >= table.sweep_at {
            table.map.retain(|_, w| w.strong_count() > 0);
            table.sweep_at = (table.map.len() * 2).max(1024);
        }
        match table.map.entry(key) {
            Entry::Occupied(mut e) => {
                if let Some(node) = e.get().upgrade() {
                    return Word(node);
                }
                let w = Word::make(kind());
                e.insert(Arc::downgrade(&w.0));
                w
            }
            Entry::Vacant(e) => {
                let w = Word::make(kind());
                e.insert(Arc::downgrade(&w.0));
                w
            }
        }
    }

    fn make(kind: Kind) -> Word {
        let (weight, depth) = match &kind {
            Kind::Gen(_) => (1, 0),
            Kind::Inv(u) => (u.weight(), u.depth()),
            Kind::Prod(u, v) => (u.weight().min(v.weight()), u.depth().min(v.depth())),
            Kind::Comm(u, v) => (u.weight() + v.weight(), u.depth().min(v.depth()) + 1),
        };
        Word(Arc::new(Node { kind, weight, depth }))
    }

    pub fn gen(name: &str) -> Word {
        let name: Arc<str> = Arc::from(name);
        Word::intern(Key::Gen(name.clone()), || Kind::Gen(name))
    }

    pub fn inv(&self) -> Word {
        Word::intern(Key::Inv(self.id()), || Kind::Inv(self.clone()))
    }

    pub fn prod(&self, other: &Word) -> Word {
        Word::intern(Key::Prod(self.id(), other.id()), || Kind::Prod(self.clone(), other.clone()))
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn comm(&self, other: &Word) -> Word {
        Word::intern(Key::Comm(self.id(), other.id()), || Kind::Comm(self.clone(), other.clone()))
    }

    /// `self^k`; negative powers go through `Inv`, zero is rejected.
    pub fn pow(&self, k: i64) -> Result<Word> {
        if k == 0 {
            return Err(Error::Unsupported("the empty word has no representation".into()));
        }
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut square = base;
        let mut acc: Option<Word> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => square.clone(),
                    Some(a) => a.prod(&square),
                });
            }
            e >>= 1;
            if e > 0 {
                square = square.prod(&square);
            }
        }
        Ok(acc.expect("nonzero exponent"))
    }

    /// Left-normed commutator `[w_1, w_2, …, w_k] = [[…[w_1, w_2], …], w_k]`.
    pub fn left_normed_of(parts: &[Word]) -> Result<Word> {
        if parts.len() < 2 {
            return Err(Error::TooShort);
        }
        Ok(parts[1..].iter().fold(parts[0].clone(), |acc, w| acc.comm(w)))
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn weight(&self) -> u32 {
        self.0.weight
    }

    pub fn depth(&self) -> u32 {
        self.0.depth
    }

    /// Identity of the shared node.
    pub fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn as_gen(&self) -> Option<&str> {
        match &self.0.kind {
            Kind::Gen(name) => Some(name),
            _ => None,
        }
    }

    /// Generator names in order of first appearance (left to right).
    pub fn generators(&self) -> Vec<String> {
        let mut seen = std::collections::HashSet::new();
        let mut names = Vec::new();
        let mut stack = vec![self.clone()];
        let mut visited = std::collections::HashSet::new();
        while let Some(w) = stack.pop() {
            if !visited.insert(w.id()) {
                continue;
            }
            match w.kind() {
                Kind::Gen(n) => {
                    if seen.insert(n.clone()) {
                        names.push(n.to_string());
                    }
                }
                Kind::Inv(u) => stack.push(u.clone()),
                Kind::Prod(u, v) | Kind::Comm(u, v) => {
                    stack.push(v.clone());
                    stack.push(u.clone());
                }
            }
        }
        names
    }

    /// Nodes reachable from `self` in post-order (children first), each once.
    pub fn post_order(&self) -> Vec<Word> {
        let mut out = Vec::new();
        let mut done = std::collections::HashSet::new();
        let mut stack: Vec<(Word, bool)> = vec![(self.clone(), false)];
        while let Some((w, expanded)) = stack.pop() {
            if done.contains(&w.id()) {
                continue;
            }
            if expanded {
                done.insert(w.id());
                out.push(w);
                continue;
            }
            stack.push((w.clone(), true));
            match w.kind() {
                Kind::Gen(_) => {}
                Kind::Inv(u) => stack.push((u.clone(), false)),
                Kind::Prod(u, v) | Kind::Comm(u, v) => {
                    stack.push((v.clone(), false));
                    stack.push((u.clone(), false));
                }
            }
        }
        out
    }

    /// Number of distinct DAG nodes.
    pub fn dag_size(&self) -> usize {
        self.post_order().len()
    }

    /// Occurrences of generator `name` in the expanded tree.
    pub fn letter_count(&self, name: &str) -> u128 {
        let mut counts: HashMap<usize, u128> = HashMap::new();
        for w in self.post_order() {
            let c = match w.kind() {
                Kind::Gen(n) => u128::from(&**n == name),
                Kind::Inv(u) => counts[&u.id()],
                Kind::Prod(u, v) | Kind::Comm(u, v) => counts[&u.id()] + counts[&v.id()],
            };
            counts.insert(w.id(), c);
        }
        counts[&self.id()]
    }

    /// True when built from generators by commutators alone.
    pub fn is_pure_commutator(&self) -> bool {
        self.post_order()
            .iter()
            .all(|w| matches!(w.kind(), Kind::Gen(_) | Kind::Comm(..)))
    }

    /// Renames generators; every generator of the word must be mapped.
    pub fn substitute(&self, map: &HashMap<String, String>) -> Result<Word> {
        let mut done: HashMap<usize, Word> = HashMap::new();
        for w in self.post_order() {
            let image = match w.kind() {
                Kind::Gen(n) => {
                    let target = map.get(&**n).ok_or_else(|| Error::BadSubstitution(n.to_string()))?;
                    Word::gen(target)
                }
                Kind::Inv(u) => done[&u.id()].inv(),
                Kind::Prod(u, v) => done[&u.id()].prod(&done[&v.id()]),
                Kind::Comm(u, v) => done[&u.id()].comm(&done[&v.id()]),
            };
            done.insert(w.id(), image);
        }
        Ok(done.remove(&self.id()).expect("root visited"))
    }

    /// Renaming given as `(from, to)` pairs.
    pub fn rename(&self, pairs: &[(&str, &str)]) -> Result<Word> {
        let map = pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        self.substitute(&map)
    }

    /// Parses the s-expression form; see [`fmt::Display`] for the grammar.
    pub fn parse(s: &str) -> Result<Word> {
        super::sexpr::parse(s)
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for Word {}

impl std::hash::Hash for Word {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.id().hash(state)
    }
}

/// S-expression form: a generator name, `(inv u)`, `(prod u v …)` or
/// `(comm u v …)`, where several arguments nest to the left. Left-normed
/// commutators of generators print flat, e.g. `(comm (comm b a a) (comm b a))`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            Kind::Gen(n) => write!(f, "{n}"),
            Kind::Inv(u) => write!(f, "(inv {u})"),
            Kind::Prod(u, v) => write!(f, "(prod {u} {v})"),
            Kind::Comm(u, v) => {
                let mut tail = Vec::new();
                let mut cur = self.clone();
                while let Kind::Comm(l, r) = cur.kind() {
                    if r.as_gen().is_none() {
                        break;
                    }
                    tail.push(r.clone());
                    let next = l.clone();
                    cur = next;
                }
                if tail.is_empty() {
                    return write!(f, "(comm {u} {v})");
                }
                write!(f, "(comm {cur}")?;
                for w in tail.iter().rev() {
                    write!(f, " {w}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [weight {}, depth {}]", self.weight(), self.depth())
    }
}
