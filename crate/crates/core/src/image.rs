//! Breadth-first search over images `S·w` of a start set.
//!
//! Nodes are stored in discovery order. Letters are tried in index order from
//! nodes taken in discovery order, so the first word found for a node is the
//! lexicographically least among its shortest words, and discovery order is
//! (depth, lexicographic) order on those words.

use std::collections::HashMap;

use crate::automaton::{Automaton, Letter, StateSet, Word};
use crate::error::{Error, Result};

/// Default cap on the number of distinct images explored.
pub const DEFAULT_BUDGET: usize = 1 << 22;

/// Byte-indexed image tables are only built up to this many states.
const TABLE_MAX_STATES: usize = 512;

/// Per-letter lookup tables: for every byte-aligned chunk of 8 states and
/// every 256-value pattern of that chunk, the image bit vector.
pub struct ImageTable<'a> {
    automaton: &'a Automaton,
    words: usize,
    chunks: usize,
    table: Option<Vec<u64>>,
}

impl<'a> ImageTable<'a> {
    pub fn new(automaton: &'a Automaton) -> Self {
        let n = automaton.states();
        let words = n.div_ceil(64);
        let chunks = n.div_ceil(8);
        let table = (n <= TABLE_MAX_STATES).then(|| {
            let m = automaton.letters();
            let mut table = vec![0u64; m * chunks * 256 * words];
            for a in 0..m {
                for c in 0..chunks {
                    for pattern in 1..256usize {
                        let base = ((a * chunks + c) * 256 + pattern) * words;
                        for bit in 0..8 {
                            let q = c * 8 + bit;
                            if pattern >> bit & 1 == 1 && q < n {
                                let t = automaton.next(q, a);
                                table[base + t / 64] |= 1 << (t % 64);
                            }
                        }
                    }
                }
            }
            table
        });
        ImageTable {
            automaton,
            words,
            chunks,
            table,
        }
    }

    pub fn automaton(&self) -> &Automaton {
        self.automaton
    }

    pub fn image(&self, set: &StateSet, a: Letter) -> StateSet {
        let Some(table) = &self.table else {
            return self.automaton.image(set, a);
        };
        let mut out = vec![0u64; self.words];
        for (c, byte) in set
            .words()
            .iter()
            .flat_map(|w| w.to_le_bytes())
            .take(self.chunks)
            .enumerate()
        {
            if byte == 0 {
                continue;
            }
            let base = ((a * self.chunks + c) * 256 + byte as usize) * self.words;
            for (o, t) in out.iter_mut().zip(&table[base..base + self.words]) {
                *o |= t;
            }
        }
        StateSet::from_words(self.automaton.states(), out)
    }
}

#[derive(Debug, Clone)]
pub struct ImageNode {
    pub set: StateSet,
    pub depth: usize,
    parent: Option<(usize, Letter)>,
}

/// Images reached from a start set, in breadth-first discovery order.
#[derive(Debug, Clone)]
pub struct ImageGraph {
    nodes: Vec<ImageNode>,
    index: HashMap<StateSet, usize>,
}

impl ImageGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[ImageNode] {
        &self.nodes
    }

    pub fn position(&self, set: &StateSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// Shortest length and lexicographically least shortest word reaching `set`.
    pub fn get(&self, set: &StateSet) -> Option<(usize, Word)> {
        self.position(set)
            .map(|i| (self.nodes[i].depth, self.word_to(i)))
    }

    pub fn word_to(&self, mut i: usize) -> Word {
        let mut letters = Vec::with_capacity(self.nodes[i].depth);
        while let Some((parent, a)) = self.nodes[i].parent {
            letters.push(a);
            i = parent;
        }
        letters.reverse();
        Word::new(letters)
    }
}

/// Breadth-first explorer with a node budget.
pub struct Explorer<'a> {
    table: ImageTable<'a>,
    budget: usize,
}

impl<'a> Explorer<'a> {
    pub fn new(automaton: &'a Automaton, budget: usize) -> Self {
        Explorer {
            table: ImageTable::new(automaton),
            budget,
        }
    }

    pub fn automaton(&self) -> &Automaton {
        self.table.automaton()
    }

    /// Explores images of `start` until a discovered image satisfies `stop`
    /// (the start set included) or the reachable family is exhausted. Returns
    /// the graph and the index of the stopping node.
    pub fn explore(
        &self,
        start: StateSet,
        mut stop: impl FnMut(&StateSet) -> bool,
    ) -> Result<(ImageGraph, Option<usize>)> {
        let mut graph = ImageGraph {
            nodes: Vec::new(),
            index: HashMap::new(),
        };
        let hit = stop(&start);
        graph.index.insert(start.clone(), 0);
        graph.nodes.push(ImageNode {
            set: start,
            depth: 0,
            parent: None,
        });
        if hit {
            return Ok((graph, Some(0)));
        }
        let m = self.automaton().letters();
        let mut head = 0;
        while head < graph.nodes.len() {
            for a in 0..m {
                let next = self.table.image(&graph.nodes[head].set, a);
                if graph.index.contains_key(&next) {
                    continue;
                }
                if graph.nodes.len() >= self.budget {
                    return Err(Error::BudgetExceeded {
                        budget: self.budget,
                    });
                }
                let hit = stop(&next);
                let depth = graph.nodes[head].depth + 1;
                graph.index.insert(next.clone(), graph.nodes.len());
                graph.nodes.push(ImageNode {
                    set: next,
                    depth,
                    parent: Some((head, a)),
                });
                if hit {
                    let i = graph.nodes.len() - 1;
                    return Ok((graph, Some(i)));
                }
            }
            head += 1;
        }
        Ok((graph, None))
    }

    /// Lexicographically least shortest `w` with `goal(start·w)`.
    pub fn shortest(
        &self,
        start: StateSet,
        goal: impl FnMut(&StateSet) -> bool,
    ) -> Result<Option<Word>> {
        let (graph, hit) = self.explore(start, goal)?;
        Ok(hit.map(|i| graph.word_to(i)))
    }
}

/// Every image `Q·w`, with its shortest length and least shortest word.
pub fn image_bfs(automaton: &Automaton, budget: usize) -> Result<ImageGraph> {
    let explorer = Explorer::new(automaton, budget);
    Ok(explorer.explore(automaton.full_set(), |_| false)?.0)
}
