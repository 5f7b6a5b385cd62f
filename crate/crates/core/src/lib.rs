//! Word arithmetic in Thompson's group F and a key exchange built on it.
//!
//! F has the presentation `< x_0, x_1, .. | x_i^-1 x_k x_i = x_{k+1} (i < k) >`.
//! Every element has a unique normal form
//! `x_{i_1} .. x_{i_s} x_{j_t}^-1 .. x_{j_1}^-1` with sorted indices and no
//! bad pairs; [`engine::normal_form`] computes it in `O(n log n)`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod engine;
pub mod error;
pub mod oracle;
pub mod protocol;
pub mod rng;
pub mod subgroup;
pub mod word;

pub use engine::{erase_bad_pairs, merge, multiply, normal_form, seminormal_form};
pub use error::{KeyError, WordError};
pub use oracle::{oracle_normal, oracle_seminormal};
pub use protocol::{
    alice_shared, alice_token, bob_shared, bob_token, Party, PrivateKey, ProtocolParams, PublicToken, Role,
    SharedKey,
};
pub use rng::SeededRng;
pub use subgroup::{gen_a, gen_b, gen_base_word, in_a, in_b, SubgroupParams};
pub use word::{Letter, NormalWord, SeminormalWord, Sign, Word, INDEX_CAP};
