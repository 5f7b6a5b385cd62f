//! Two-party key exchange based on the decomposition problem.
//!
//! Public: `s`, `M` and a base word `w`. Alice holds `a_1 ∈ A_s`,
//! `b_1 ∈ B_s` and publishes `a_1 w b_1`; Bob holds `a_2 ∈ A_s`, `b_2 ∈ B_s`
//! and publishes `b_2 w a_2`. Since `A_s` and `B_s` commute elementwise,
//! `a_1 (b_2 w a_2) b_1 = b_2 (a_1 w b_1) a_2`.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::engine::multiply3;
use crate::error::KeyError;
use crate::rng::SeededRng;
use crate::subgroup::{gen_a, gen_b, gen_base_word, in_a, in_b, SubgroupParams};
use crate::word::NormalWord;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct ProtocolParams {
    s: u64,
    #[serde(rename = "M")]
    m: usize,
    w: NormalWord,
}

#[derive(Deserialize)]
struct RawParams {
    s: u64,
    #[serde(rename = "M")]
    m: usize,
    w: NormalWord,
}

impl TryFrom<RawParams> for ProtocolParams {
    type Error = KeyError;

    fn try_from(raw: RawParams) -> Result<Self, Self::Error> {
        ProtocolParams::new(raw.s, raw.m, raw.w)
    }
}

impl ProtocolParams {
    pub fn new(s: u64, m: usize, w: NormalWord) -> Result<Self, KeyError> {
        if s < 2 {
            return Err(KeyError::SmallS(s));
        }
        if m == 0 {
            return Err(KeyError::BadLength(m));
        }
        if !m.is_multiple_of(2) {
            return Err(KeyError::OddLength(m));
        }
        Ok(ProtocolParams { s, m, w })
    }

    /// Parameters with a freshly sampled base word of length about `m`.
    pub fn generate(s: u64, m: usize, rng: &mut SeededRng) -> Result<Self, KeyError> {
        let sub = SubgroupParams::new(s, m)?;
        let w = gen_base_word(&sub, rng)?;
        ProtocolParams::new(s, m, w)
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn target_len(&self) -> usize {
        self.m
    }

    pub fn base(&self) -> &NormalWord {
        &self.w
    }

    fn subgroup(&self) -> SubgroupParams {
        SubgroupParams::new(self.s, self.m).expect("validated on construction")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Alice,
    Bob,
}

/// A party's secret pair `(a, b)` with `a ∈ A_s` and `b ∈ B_s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrivateKey {
    pub a: NormalWord,
    pub b: NormalWord,
}

impl PrivateKey {
    pub fn new(a: NormalWord, b: NormalWord, s: u64) -> Result<Self, KeyError> {
        let key = PrivateKey { a, b };
        key.validate(s)?;
        Ok(key)
    }

    pub fn validate(&self, s: u64) -> Result<(), KeyError> {
        if !in_a(&self.a, s) {
            return Err(KeyError::InvalidKey("a"));
        }
        if !in_b(&self.b, s) {
            return Err(KeyError::InvalidKey("b"));
        }
        Ok(())
    }

    /// Samples `a` and `b` from two substreams forked off `rng`, `a` first.
    pub fn generate(params: &ProtocolParams, rng: &mut SeededRng) -> Result<Self, KeyError> {
        let sub = params.subgroup();
        let mut a_rng = rng.fork();
        let mut b_rng = rng.fork();
        let a = gen_a(&sub, &mut a_rng)?;
        let b = gen_b(&sub, &mut b_rng)?;
        Ok(PrivateKey { a, b })
    }
}

/// A normalized word sent over the wire.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PublicToken {
    pub u: NormalWord,
}

/// The agreed group element together with the SHA-256 digest of its
/// canonical JSON serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedKey {
    pub k: NormalWord,
    pub digest: [u8; 32],
}

impl SharedKey {
    pub fn from_element(k: NormalWord) -> Self {
        let digest = Sha256::digest(k.to_canonical_json().as_bytes()).into();
        SharedKey { k, digest }
    }
}

/// `a_1 w b_1`, as sent by Alice.
pub fn alice_token(params: &ProtocolParams, key: &PrivateKey) -> Result<PublicToken, KeyError> {
    key.validate(params.s)?;
    Ok(PublicToken { u: multiply3(&key.a, &params.w, &key.b) })
}

/// `b_2 w a_2`, as sent by Bob.
pub fn bob_token(params: &ProtocolParams, key: &PrivateKey) -> Result<PublicToken, KeyError> {
    key.validate(params.s)?;
    Ok(PublicToken { u: multiply3(&key.b, &params.w, &key.a) })
}

/// Alice's key `a_1 (b_2 w a_2) b_1`.
pub fn alice_shared(key: &PrivateKey, bob: &PublicToken) -> SharedKey {
    SharedKey::from_element(multiply3(&key.a, &bob.u, &key.b))
}

/// Bob's key `b_2 (a_1 w b_1) a_2`.
pub fn bob_shared(key: &PrivateKey, alice: &PublicToken) -> SharedKey {
    SharedKey::from_element(multiply3(&key.b, &alice.u, &key.a))
}

/// One side of the exchange.
#[derive(Debug, Clone)]
pub struct Party {
    pub role: Role,
    pub key: PrivateKey,
}

impl Party {
    pub fn generate(role: Role, params: &ProtocolParams, rng: &mut SeededRng) -> Result<Self, KeyError> {
        Ok(Party { role, key: PrivateKey::generate(params, rng)? })
    }

    pub fn token(&self, params: &ProtocolParams) -> Result<PublicToken, KeyError> {
        match self.role {
            Role::Alice => alice_token(params, &self.key),
            Role::Bob => bob_token(params, &self.key),
        }
    }

    pub fn shared(&self, peer: &PublicToken) -> SharedKey {
        match self.role {
            Role::Alice => alice_shared(&self.key, peer),
            Role::Bob => bob_shared(&self.key, peer),
        }
    }
}
