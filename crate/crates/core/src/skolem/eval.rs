//! The standard interpretation `|t| : ℕ^k → ℕ^r`.
//!
//! Evaluation runs on an explicit work stack, so towers of compositions and
//! recursors of any depth evaluate without growing the call stack. Values
//! are exact.
//!
//! Closed library terms may carry a *jet*: a native implementation that
//! computes the same function as the term. When the evaluator meets a subterm
//! structurally equal to a jetted library term it runs the native code
//! instead of unfolding the recursion. Jets change cost, never results; each
//! one is checked against the unfolded term on finite windows in the test
//! suite. An [`Evaluator`] can switch jets off globally or individually.

use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};

use num_traits::{One, Zero};

use super::jets::Jetted;
use super::library;
use super::term::{Kind, Nat, Term};
use crate::error::Error;

/// A native implementation of a closed library term.
pub(crate) struct Jet {
    pub name: &'static str,
    pub term: Term,
    pub run: fn(&[Nat]) -> Jetted,
}

#[derive(Default)]
pub(crate) struct IdHasher(u64);

impl Hasher for IdHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for b in bytes {
            self.0 = self.0.rotate_left(8) ^ u64::from(*b);
        }
    }
    fn write_u64(&mut self, n: u64) {
        self.0 = n;
    }
    fn write_usize(&mut self, n: usize) {
        self.0 = (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    }
}

pub(crate) type IdMap<K, V> = HashMap<K, V, BuildHasherDefault<IdHasher>>;

pub(crate) struct JetTable {
    entries: Vec<Jet>,
    by_hash: IdMap<u64, Vec<usize>>,
}

impl JetTable {
    pub fn new(entries: Vec<Jet>) -> JetTable {
        let mut by_hash: IdMap<u64, Vec<usize>> = IdMap::default();
        for (i, j) in entries.iter().enumerate() {
            by_hash.entry(j.term.structural_hash()).or_default().push(i);
        }
        JetTable { entries, by_hash }
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|j| j.name)
    }

    fn lookup(&self, t: &Term) -> Option<usize> {
        let candidates = self.by_hash.get(&t.structural_hash())?;
        candidates.iter().copied().find(|&i| self.entries[i].term == *t)
    }
}

#[derive(Debug, Clone, Default)]
enum JetPolicy {
    #[default]
    All,
    Off,
    Except(Vec<String>),
}

/// Configurable evaluator. The default uses every jet and has no step budget.
#[derive(Debug, Clone, Default)]
pub struct Evaluator {
    jets: JetPolicy,
    fuel: Option<u64>,
}

enum Frame {
    Eval(Term, Vec<Nat>),
    Then(Term),
    Collect { tuple: Term, next: usize, args: Vec<Nat>, acc: Vec<Nat> },
    Iterate { step: Term, remaining: Nat },
}

impl Evaluator {
    pub fn new() -> Evaluator {
        Evaluator::default()
    }

    /// Unfold every term down to the six primitive formers.
    pub fn without_jets(mut self) -> Evaluator {
        self.jets = JetPolicy::Off;
        self
    }

    /// Disable the jet registered under `name`; other jets stay active.
    pub fn without_jet(mut self, name: &str) -> Evaluator {
        match &mut self.jets {
            JetPolicy::Off => {}
            JetPolicy::All => self.jets = JetPolicy::Except(vec![name.to_string()]),
            JetPolicy::Except(v) => v.push(name.to_string()),
        }
        self
    }

    /// Abort with [`Error::OutOfFuel`] after `steps` machine steps.
    pub fn with_fuel(mut self, steps: u64) -> Evaluator {
        self.fuel = Some(steps);
        self
    }

    fn jet_for(&self, table: &JetTable, t: &Term, cache: &mut IdMap<usize, Option<usize>>) -> Option<fn(&[Nat]) -> Jetted> {
        if matches!(self.jets, JetPolicy::Off) {
            return None;
        }
        let idx = (*cache.entry(t.node_id()).or_insert_with(|| table.lookup(t)))?;
        let jet = &table.entries[idx];
        if let JetPolicy::Except(names) = &self.jets {
            if names.iter().any(|n| n == jet.name) {
                return None;
            }
        }
        Some(jet.run)
    }

    pub fn eval(&self, t: &Term, args: &[Nat]) -> Result<Vec<Nat>, Error> {
        if args.len() != t.source() {
            return Err(Error::ArityMismatch { expected: t.source(), found: args.len() });
        }
        let table = library::jet_table();
        // keeps decoded/parsed nodes alive so node ids in the cache stay unique
        let root = t.clone();
        let mut cache: IdMap<usize, Option<usize>> = IdMap::default();
        let mut stack = vec![Frame::Eval(root.clone(), args.to_vec())];
        let mut value: Vec<Nat> = Vec::new();
        let mut steps: u64 = 0;

        while let Some(frame) = stack.pop() {
            steps += 1;
            if let Some(limit) = self.fuel {
                if steps > limit {
                    return Err(Error::OutOfFuel(limit));
                }
            }
            match frame {
                Frame::Eval(t, mut args) => {
                    if let Some(run) = self.jet_for(table, &t, &mut cache) {
                        value = run(&args)?;
                        continue;
                    }
                    match t.kind() {
                        Kind::Zero(_) => value = vec![Nat::zero()],
                        Kind::Succ => {
                            let x = args.pop().expect("successor takes one argument");
                            value = vec![x + 1u32];
                        }
                        Kind::Proj { index, .. } => {
                            value = vec![args.swap_remove(index - 1)];
                        }
                        Kind::Tuple { parts, .. } => {
                            if parts.is_empty() {
                                value = Vec::new();
                            } else {
                                let first = parts[0].clone();
                                stack.push(Frame::Collect {
                                    tuple: t.clone(),
                                    next: 1,
                                    args: args.clone(),
                                    acc: Vec::new(),
                                });
                                stack.push(Frame::Eval(first, args));
                            }
                        }
                        Kind::Comp { outer, inner } => {
                            stack.push(Frame::Then(outer.clone()));
                            stack.push(Frame::Eval(inner.clone(), args));
                        }
                        Kind::PrimRec { base, step } => {
                            let counter = args.pop().expect("recursor takes a counter");
                            stack.push(Frame::Iterate { step: step.clone(), remaining: counter });
                            stack.push(Frame::Eval(base.clone(), args));
                        }
                    }
                }
                Frame::Then(outer) => {
                    let input = std::mem::take(&mut value);
                    stack.push(Frame::Eval(outer, input));
                }
                Frame::Collect { tuple, next, args, mut acc } => {
                    acc.append(&mut value);
                    let Kind::Tuple { parts, .. } = tuple.kind() else {
                        unreachable!("collect frames are only built for tuples")
                    };
                    if next == parts.len() {
                        value = acc;
                    } else {
                        let part = parts[next].clone();
                        if next + 1 == parts.len() {
                            stack.push(Frame::Collect { tuple: tuple.clone(), next: next + 1, args: Vec::new(), acc });
                            stack.push(Frame::Eval(part, args));
                        } else {
                            let input = args.clone();
                            stack.push(Frame::Collect { tuple: tuple.clone(), next: next + 1, args, acc });
                            stack.push(Frame::Eval(part, input));
                        }
                    }
                }
                Frame::Iterate { step, mut remaining } => {
                    if !remaining.is_zero() {
                        remaining -= Nat::one();
                        let input = std::mem::take(&mut value);
                        stack.push(Frame::Iterate { step: step.clone(), remaining });
                        stack.push(Frame::Eval(step, input));
                    }
                }
            }
        }
        drop(root);
        Ok(value)
    }
}

/// Evaluate with the default evaluator.
pub fn eval(t: &Term, args: &[Nat]) -> Result<Vec<Nat>, Error> {
    Evaluator::new().eval(t, args)
}

/// Convenience conversion for small literal inputs.
pub fn nats(values: &[u64]) -> Vec<Nat> {
    values.iter().map(|&v| Nat::from(v)).collect()
}

/// Evaluate a term with target 1 on small inputs.
pub fn eval_scalar(t: &Term, args: &[u64]) -> Result<Nat, Error> {
    let mut out = eval(t, &nats(args))?;
    if out.len() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: out.len() });
    }
    Ok(out.pop().expect("length checked"))
}

/// Names of every registered jet.
pub fn jet_names() -> Vec<&'static str> {
    library::jet_table().names().collect()
}
