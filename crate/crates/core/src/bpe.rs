//! Byte-pair encoding over token ids with non-mergeable tokens.
//!
//! Training repeatedly merges the most frequent adjacent pair of mergeable
//! tokens, breaking ties by the smallest `(left, right)` id pair. Pairs are
//! counted within each corpus sequence and never across a non-mergeable
//! token. Encoding applies merges in rule order, each rule replacing its
//! occurrences left to right, which is the same rewrite training performs.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::vocab::Vocab;
use crate::TokenId;

const NONE: u32 = u32::MAX;
const DEAD: TokenId = TokenId::MAX;

/// Minimum pair frequency for a merge to be learned.
pub const MIN_PAIR_FREQUENCY: i64 = 2;

fn check_base_ids(tokens: &[TokenId], vocab: &Vocab) -> Result<()> {
    match tokens.iter().find(|&&id| !vocab.is_base(id)) {
        Some(&id) => Err(Error::InvalidToken {
            id,
            reason: format!("not a base id (base vocabulary has {} tokens)", vocab.base_len()),
        }),
        None => Ok(()),
    }
}

#[derive(Default)]
struct PairStats {
    count: i64,
    /// Left-node indices where the pair was ever formed; validated on use.
    positions: Vec<u32>,
}

/// Doubly linked token list over the whole corpus, plus pair bookkeeping.
struct Trainer {
    sym: Vec<TokenId>,
    prev: Vec<u32>,
    next: Vec<u32>,
    mergeable: Vec<bool>,
    pairs: FxHashMap<(TokenId, TokenId), PairStats>,
    heap: BinaryHeap<(i64, Reverse<(TokenId, TokenId)>)>,
}

impl Trainer {
    fn new(vocab: &Vocab, corpus: &[Vec<TokenId>]) -> Result<Trainer> {
        let total: usize = corpus.iter().map(Vec::len).sum();
        if total >= NONE as usize {
            return Err(Error::InvalidParams(format!(
                "corpus of {total} tokens exceeds the trainer's 32-bit index space"
            )));
        }
        let mut sym = Vec::with_capacity(total);
        let mut prev = Vec::with_capacity(total);
        let mut next = Vec::with_capacity(total);
        for seq in corpus {
            check_base_ids(seq, vocab)?;
            let start = sym.len() as u32;
            for (i, &t) in seq.iter().enumerate() {
                let idx = start + i as u32;
                sym.push(t);
                prev.push(if i == 0 { NONE } else { idx - 1 });
                next.push(if i + 1 == seq.len() { NONE } else { idx + 1 });
            }
        }
        let mergeable = (0..vocab.base_len() as TokenId)
            .map(|id| vocab.is_mergeable(id))
            .collect();
        let mut t = Trainer {
            sym,
            prev,
            next,
            mergeable,
            pairs: FxHashMap::default(),
            heap: BinaryHeap::new(),
        };
        for i in 0..t.sym.len() {
            let j = t.next[i];
            if j != NONE && t.pairable(t.sym[i], t.sym[j as usize]) {
                let stats = t.pairs.entry((t.sym[i], t.sym[j as usize])).or_default();
                stats.count += 1;
                stats.positions.push(i as u32);
            }
        }
        let heap = t.pairs.iter().map(|(&pair, s)| (s.count, Reverse(pair))).collect();
        t.heap = heap;
        Ok(t)
    }

    #[inline]
    fn pairable(&self, a: TokenId, b: TokenId) -> bool {
        self.mergeable[a as usize] && self.mergeable[b as usize]
    }

    fn adjust(&mut self, pair: (TokenId, TokenId), delta: i64, position: Option<u32>) {
        if !self.pairable(pair.0, pair.1) {
            return;
        }
        let stats = self.pairs.entry(pair).or_default();
        stats.count += delta;
        debug_assert!(stats.count >= 0, "negative count for {pair:?}");
        if let Some(p) = position {
            stats.positions.push(p);
        }
        self.heap.push((stats.count, Reverse(pair)));
    }

    /// Pops the best live pair with at least `MIN_PAIR_FREQUENCY` occurrences.
    fn best_pair(&mut self) -> Option<(TokenId, TokenId)> {
        while let Some((count, Reverse(pair))) = self.heap.pop() {
            let current = self.pairs.get(&pair).map_or(0, |s| s.count);
            if current != count {
                continue;
            }
            return (count >= MIN_PAIR_FREQUENCY).then_some(pair);
        }
        None
    }

    fn merge(&mut self, (a, b): (TokenId, TokenId), new: TokenId) {
        self.mergeable.push(true);
        let mut positions = self
            .pairs
            .get_mut(&(a, b))
            .map(|s| std::mem::take(&mut s.positions))
            .unwrap_or_default();
        positions.sort_unstable();
        positions.dedup();
        for i in positions {
            let iu = i as usize;
            if self.sym[iu] != a {
                continue;
            }
            let j = self.next[iu];
            if j == NONE || self.sym[j as usize] != b {
                continue;
            }
            let h = self.prev[iu];
            let k = self.next[j as usize];
            if h != NONE {
                self.adjust((self.sym[h as usize], a), -1, None);
            }
            if k != NONE {
                self.adjust((b, self.sym[k as usize]), -1, None);
            }
            self.adjust((a, b), -1, None);

            self.sym[iu] = new;
            self.sym[j as usize] = DEAD;
            self.next[iu] = k;
            if k != NONE {
                self.prev[k as usize] = i;
            }

            if h != NONE {
                self.adjust((self.sym[h as usize], new), 1, Some(h));
            }
            if k != NONE {
                self.adjust((new, self.sym[k as usize]), 1, Some(i));
            }
        }
        debug_assert_eq!(self.pairs.get(&(a, b)).map_or(0, |s| s.count), 0);
        self.pairs.remove(&(a, b));
    }
}

/// Learns merges over `corpus` until the vocabulary has `target_size` ids or
/// no pair occurs at least twice.
///
/// `base` supplies the base tokens; any merges it already has are ignored.
pub fn bpe_train(base: &Vocab, corpus: &[Vec<TokenId>], target_size: usize) -> Result<Vocab> {
    let mut vocab = base.base_only();
    if target_size < vocab.len() {
        return Err(Error::BudgetExhausted {
            base: vocab.len(),
            target: target_size,
        });
    }
    let mut trainer = Trainer::new(&vocab, corpus)?;
    while vocab.len() < target_size {
        let Some(pair) = trainer.best_pair() else {
            break;
        };
        let new = vocab
            .push_merge(pair)
            .map_err(|msg| Error::InvalidParams(format!("learned merge {pair:?}: {msg}")))?;
        trainer.merge(pair, new);
    }
    Ok(vocab)
}

/// Applies `vocab`'s merges to a sequence of base ids.
pub fn bpe_encode(tokens: &[TokenId], vocab: &Vocab) -> Result<Vec<TokenId>> {
    check_base_ids(tokens, vocab)?;
    let mut out = Vec::with_capacity(tokens.len());
    let mut scratch = EncodeScratch::default();
    encode_into(tokens, vocab, &mut scratch, &mut out);
    Ok(out)
}

#[derive(Default)]
struct EncodeScratch {
    sym: Vec<TokenId>,
    next: Vec<u32>,
    prev: Vec<u32>,
    heap: BinaryHeap<Reverse<(u32, u32)>>,
}

/// Rank-ordered merging with a heap keyed by `(rank, position)`.
///
/// Tokens created by merge `r` only appear in merges ranked after `r`, so
/// popping the lowest rank, leftmost first, reproduces rule-order rewriting.
fn encode_into(tokens: &[TokenId], vocab: &Vocab, s: &mut EncodeScratch, out: &mut Vec<TokenId>) {
    let n = tokens.len();
    if vocab.merges().is_empty() || n < 2 {
        out.extend_from_slice(tokens);
        return;
    }
    let base = vocab.base_len() as TokenId;
    s.sym.clear();
    s.sym.extend_from_slice(tokens);
    s.next.clear();
    s.next
        .extend((1..=n as u32).map(|i| if i as usize == n { NONE } else { i }));
    s.prev.clear();
    s.prev.extend((0..n as u32).map(|i| if i == 0 { NONE } else { i - 1 }));
    s.heap.clear();
    for i in 0..n - 1 {
        if let Some(rank) = vocab.rank_of(tokens[i], tokens[i + 1]) {
            s.heap.push(Reverse((rank, i as u32)));
        }
    }
    while let Some(Reverse((rank, i))) = s.heap.pop() {
        let iu = i as usize;
        let a = s.sym[iu];
        if a == DEAD {
            continue;
        }
        let j = s.next[iu];
        if j == NONE || vocab.rank_of(a, s.sym[j as usize]) != Some(rank) {
            continue;
        }
        let new = base + rank;
        let k = s.next[j as usize];
        s.sym[iu] = new;
        s.sym[j as usize] = DEAD;
        s.next[iu] = k;
        if k != NONE {
            s.prev[k as usize] = i;
            if let Some(r) = vocab.rank_of(new, s.sym[k as usize]) {
                s.heap.push(Reverse((r, i)));
            }
        }
        let h = s.prev[iu];
        if h != NONE {
            if let Some(r) = vocab.rank_of(s.sym[h as usize], new) {
                s.heap.push(Reverse((r, h)));
            }
        }
    }
    let mut cur = 0u32;
    while cur != NONE {
        out.push(s.sym[cur as usize]);
        cur = s.next[cur as usize];
    }
}

/// Reusable encoder for many sequences under one vocabulary.
pub struct BpeEncoder<'v> {
    vocab: &'v Vocab,
    scratch: EncodeScratch,
}

impl<'v> BpeEncoder<'v> {
    pub fn new(vocab: &'v Vocab) -> Self {
        Self {
            vocab,
            scratch: EncodeScratch::default(),
        }
    }

    pub fn encode(&mut self, tokens: &[TokenId]) -> Result<Vec<TokenId>> {
        check_base_ids(tokens, self.vocab)?;
        let mut out = Vec::with_capacity(tokens.len());
        encode_into(tokens, self.vocab, &mut self.scratch, &mut out);
        Ok(out)
    }

    /// Like [`encode`](Self::encode), appending to `out`.
    pub fn encode_into(&mut self, tokens: &[TokenId], out: &mut Vec<TokenId>) -> Result<()> {
        check_base_ids(tokens, self.vocab)?;
        encode_into(tokens, self.vocab, &mut self.scratch, out);
        Ok(())
    }
}

/// Expands merged ids back into base ids.
pub fn bpe_decode(tokens: &[TokenId], vocab: &Vocab) -> Result<Vec<TokenId>> {
    let mut out = Vec::with_capacity(tokens.len());
    for &id in tokens {
        let e = vocab.expansion(id).ok_or_else(|| Error::InvalidToken {
            id,
            reason: format!("vocabulary has {} tokens", vocab.len()),
        })?;
        out.extend_from_slice(e);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scribe::{parse_tokens, ScribeToken};
    use proptest::prelude::*;

    const E: TokenId = 4;
    const NE: TokenId = 5;
    const N: TokenId = 6;
    const DOWN: TokenId = ScribeToken::DOWN_ID;
    const UP: TokenId = ScribeToken::UP_ID;

    fn scribe() -> Vocab {
        Vocab::scribe(1.0).unwrap()
    }

    /// Direct transcription of the greedy procedure: recount every adjacent
    /// mergeable pair, take the most frequent (smallest ids on ties), rewrite
    /// each sequence left to right.
    fn naive_train(base: &Vocab, corpus: &[Vec<TokenId>], target: usize) -> Vec<(TokenId, TokenId)> {
        let mut seqs = corpus.to_vec();
        let mut merges = Vec::new();
        let mut mergeable: Vec<bool> = (0..base.len() as TokenId).map(|i| base.is_mergeable(i)).collect();
        while base.len() + merges.len() < target {
            let mut counts: std::collections::BTreeMap<(TokenId, TokenId), i64> = Default::default();
            for s in &seqs {
                for w in s.windows(2) {
                    if mergeable[w[0] as usize] && mergeable[w[1] as usize] {
                        *counts.entry((w[0], w[1])).or_default() += 1;
                    }
                }
            }
            let best = counts
                .iter()
                .max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(x.0)))
                .map(|(p, c)| (*p, *c));
            let Some((pair, count)) = best else { break };
            if count < 2 {
                break;
            }
            let new = (base.len() + merges.len()) as TokenId;
            merges.push(pair);
            mergeable.push(true);
            seqs = seqs.iter().map(|s| naive_apply(s, pair, new)).collect();
        }
        merges
    }

    fn naive_apply(s: &[TokenId], pair: (TokenId, TokenId), new: TokenId) -> Vec<TokenId> {
        let mut out = Vec::with_capacity(s.len());
        let mut i = 0;
        while i < s.len() {
            if i + 1 < s.len() && (s[i], s[i + 1]) == pair {
                out.push(new);
                i += 2;
            } else {
                out.push(s[i]);
                i += 1;
            }
        }
        out
    }

    fn naive_encode(s: &[TokenId], v: &Vocab) -> Vec<TokenId> {
        v.merges().iter().enumerate().fold(s.to_vec(), |acc, (r, &pair)| {
            naive_apply(&acc, pair, (v.base_len() + r) as TokenId)
        })
    }

    #[test]
    fn single_merge_on_run() {
        let v = bpe_train(&scribe(), &[vec![E, E, E, E]], 15).unwrap();
        assert_eq!(v.merges(), &[(E, E)]);
        assert_eq!(bpe_encode(&[E, E, E, E], &v).unwrap(), vec![14, 14]);
    }

    #[test]
    fn pen_tokens_never_merge() {
        let v = bpe_train(&scribe(), &[vec![DOWN, E, UP], vec![DOWN, E, UP]], 100).unwrap();
        assert!(v.merges().is_empty());
        let v = bpe_train(&scribe(), &[vec![E, UP, E, UP, E, UP, E]], 100).unwrap();
        assert!(v.merges().is_empty());
    }

    #[test]
    fn ties_prefer_smallest_pair() {
        let v = bpe_train(&scribe(), &[vec![E, NE, E, NE, N, N]], 16).unwrap();
        assert_eq!(v.merges()[0], (E, NE));
        assert_eq!(v.merges(), naive_train(&scribe(), &[vec![E, NE, E, NE, N, N]], 16));
    }

    #[test]
    fn stops_without_repeated_pairs() {
        let v = bpe_train(&scribe(), &[vec![E, NE, N]], 100).unwrap();
        assert!(v.merges().is_empty());
    }

    #[test]
    fn budget_checks() {
        assert!(matches!(
            bpe_train(&scribe(), &[], 13),
            Err(Error::BudgetExhausted { base: 14, target: 13 })
        ));
        assert!(bpe_train(&scribe(), &[vec![E, E, E]], 14).unwrap().merges().is_empty());
    }

    #[test]
    fn encode_left_to_right() {
        let v = scribe().with_merges(&[(E, E)]).unwrap();
        assert_eq!(bpe_encode(&[E, E, E], &v).unwrap(), vec![14, E]);
        assert!(bpe_encode(&[], &v).unwrap().is_empty());
        assert_eq!(bpe_decode(&[14, E], &v).unwrap(), vec![E, E, E]);
        assert_eq!(bpe_decode(&[E, UP], &v).unwrap(), vec![E, UP]);
    }

    #[test]
    fn invalid_ids_are_rejected() {
        let v = scribe().with_merges(&[(E, E)]).unwrap();
        assert!(matches!(
            bpe_encode(&[E, 14], &v),
            Err(Error::InvalidToken { id: 14, .. })
        ));
        assert!(matches!(bpe_decode(&[15], &v), Err(Error::InvalidToken { id: 15, .. })));
        assert!(matches!(
            bpe_train(&scribe(), &[vec![E, 99]], 20),
            Err(Error::InvalidToken { id: 99, .. })
        ));
    }

    #[test]
    fn minimal_fixture_encodes_two_stroke_example() {
        let v = scribe().with_merges(&[(11, 11)]).unwrap();
        let base = parse_tokens("DOWN E UP NE DOWN SE SE UP").unwrap();
        let enc = bpe_encode(&base, &v).unwrap();
        assert_eq!(enc, vec![DOWN, E, UP, NE, DOWN, 14, UP]);
        assert_eq!(bpe_decode(&enc, &v).unwrap(), base);
    }

    fn scribe_seq(max_len: usize) -> impl Strategy<Value = Vec<TokenId>> {
        prop::collection::vec(prop_oneof![8 => 4u32..12, 1 => Just(DOWN), 1 => Just(UP)], 0..max_len)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn trainer_matches_naive(corpus in prop::collection::vec(
            prop::collection::vec(prop_oneof![6 => 4u32..7, 1 => Just(UP)], 0..40), 1..6),
            extra in 0usize..30)
        {
            let target = 14 + extra;
            let fast = bpe_train(&scribe(), &corpus, target).unwrap();
            prop_assert_eq!(fast.merges(), &naive_train(&scribe(), &corpus, target)[..]);
        }

        #[test]
        fn encode_matches_rule_order(corpus in prop::collection::vec(scribe_seq(60), 1..5),
                                     probe in scribe_seq(80), extra in 0usize..20) {
            let v = bpe_train(&scribe(), &corpus, 14 + extra).unwrap();
            let enc = bpe_encode(&probe, &v).unwrap();
            prop_assert_eq!(&enc, &naive_encode(&probe, &v));
            prop_assert!(enc.len() <= probe.len());
            prop_assert_eq!(bpe_decode(&enc, &v).unwrap(), probe);
        }
    }
}
