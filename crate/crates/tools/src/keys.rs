//! JSON key bundles.

use serde::{Deserialize, Serialize};
use thompson_core::{KeyError, Party, PrivateKey, ProtocolParams, PublicToken, Role};

use crate::wire::{derive_key, derive_params};

/// Parameters, private factors and the token the holder would publish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyBundle {
    pub role: Role,
    pub params: ProtocolParams,
    pub private: PrivateKey,
    pub public_token: PublicToken,
}

/// Derives a bundle. Parameters come from `params_seed`, the private key from
/// `seed`; with equal seeds this reproduces Alice's side of `kex demo`.
pub fn keygen(role: Role, s: u64, m: usize, seed: u64, params_seed: u64) -> Result<KeyBundle, KeyError> {
    let params = derive_params(s, m, params_seed)?;
    let private = derive_key(&params, seed)?;
    let public_token = Party { role, key: private.clone() }.token(&params)?;
    Ok(KeyBundle { role, params, private, public_token })
}
