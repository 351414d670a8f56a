//! Proptest strategies shared by the unit tests.

use proptest::prelude::*;

use crate::braid::{BraidWord, Generator};

/// Words on 2..=`max_n` strands with at most `max_len` letters.
pub fn arb_word(max_n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_n).prop_flat_map(move |n| {
        let alphabet = Generator::alphabet(n);
        prop::collection::vec(prop::sample::select(alphabet), 0..=max_len)
            .prop_map(move |letters| BraidWord::new(n, letters).unwrap())
    })
}
