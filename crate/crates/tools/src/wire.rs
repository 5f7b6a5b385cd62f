//! Line-delimited JSON key exchange.
//!
//! Alice opens with `hello{params}` and `token{alice}`. Bob answers both with
//! `token{bob}`. Each side then sends `confirm{digest}` so the shared key can
//! be compared by hash. The session types below do no IO; `demo`, `serve` and
//! `connect` drive them in-process or over TCP.

use std::io::{BufRead, BufReader, Write};
use std::net::{TcpListener, TcpStream, ToSocketAddrs};

use serde::{Deserialize, Serialize};
use thompson_core::{
    KeyError, NormalWord, Party, PrivateKey, ProtocolParams, PublicToken, Role, SeededRng, SharedKey,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Message {
    Hello { params: ProtocolParams },
    Token { role: Role, word: NormalWord },
    Confirm { digest: String },
}

impl Message {
    fn kind(&self) -> &'static str {
        match self {
            Message::Hello { .. } => "hello",
            Message::Token { .. } => "token",
            Message::Confirm { .. } => "confirm",
        }
    }

    /// Parses one line. Words that are not in normal form are rejected here.
    pub fn parse(line: &str) -> Result<Message, WireError> {
        serde_json::from_str(line.trim_end()).map_err(WireError::Malformed)
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("messages always serialize")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum WireError {
    #[error("malformed message: {0}")]
    Malformed(#[source] serde_json::Error),
    #[error("unexpected `{kind}` message while {state}")]
    Unexpected { kind: &'static str, state: &'static str },
    #[error("token claims role {0:?} but the peer plays the other role")]
    WrongRole(Role),
    #[error("digest `{0}` is not 32 bytes of hex")]
    BadDigest(String),
    #[error(transparent)]
    Key(#[from] KeyError),
    #[error("peer closed the connection before the exchange finished")]
    Closed,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_digest(hex_digest: &str) -> Result<[u8; 32], WireError> {
    let mut out = [0u8; 32];
    hex::decode_to_slice(hex_digest, &mut out).map_err(|_| WireError::BadDigest(hex_digest.to_string()))?;
    Ok(out)
}

fn confirm(key: &SharedKey) -> Message {
    Message::Confirm { digest: hex::encode(key.digest) }
}

/// Splits a party seed into a parameter stream and a key stream.
pub fn party_streams(seed: u64) -> (SeededRng, SeededRng) {
    let mut rng = SeededRng::new(seed);
    let params_rng = rng.fork();
    (params_rng, rng)
}

/// Public parameters derived from a seed, as Alice does.
pub fn derive_params(s: u64, m: usize, seed: u64) -> Result<ProtocolParams, KeyError> {
    ProtocolParams::generate(s, m, &mut party_streams(seed).0)
}

/// A party's private key derived from its own seed.
pub fn derive_key(params: &ProtocolParams, seed: u64) -> Result<PrivateKey, KeyError> {
    PrivateKey::generate(params, &mut party_streams(seed).1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AliceState {
    Idle,
    AwaitToken,
    AwaitConfirm,
    Done,
}

/// Alice's side: chooses the parameters and speaks first.
#[derive(Debug)]
pub struct AliceSession {
    params: ProtocolParams,
    party: Party,
    state: AliceState,
    shared: Option<SharedKey>,
    agreed: Option<bool>,
}

impl AliceSession {
    pub fn new(params: ProtocolParams, key: PrivateKey) -> Result<Self, KeyError> {
        key.validate(params.s())?;
        Ok(AliceSession {
            params,
            party: Party { role: Role::Alice, key },
            state: AliceState::Idle,
            shared: None,
            agreed: None,
        })
    }

    pub fn from_seed(s: u64, m: usize, seed: u64) -> Result<Self, KeyError> {
        let params = derive_params(s, m, seed)?;
        let key = derive_key(&params, seed)?;
        AliceSession::new(params, key)
    }

    pub fn start(&mut self) -> Result<Vec<Message>, WireError> {
        if self.state != AliceState::Idle {
            return Err(WireError::Unexpected { kind: "hello", state: "already started" });
        }
        let token = self.party.token(&self.params)?;
        self.state = AliceState::AwaitToken;
        Ok(vec![
            Message::Hello { params: self.params.clone() },
            Message::Token { role: Role::Alice, word: token.u },
        ])
    }

    pub fn receive(&mut self, msg: Message) -> Result<Vec<Message>, WireError> {
        match (self.state, msg) {
            (AliceState::AwaitToken, Message::Token { role: Role::Bob, word }) => {
                let key = self.party.shared(&PublicToken { u: word });
                let reply = confirm(&key);
                self.shared = Some(key);
                self.state = AliceState::AwaitConfirm;
                Ok(vec![reply])
            }
            (AliceState::AwaitToken, Message::Token { role, .. }) => Err(WireError::WrongRole(role)),
            (AliceState::AwaitConfirm, Message::Confirm { digest }) => {
                let theirs = parse_digest(&digest)?;
                self.agreed = self.shared.as_ref().map(|k| k.digest == theirs);
                self.state = AliceState::Done;
                Ok(Vec::new())
            }
            (state, msg) => Err(WireError::Unexpected { kind: msg.kind(), state: alice_state_name(state) }),
        }
    }

    pub fn params(&self) -> &ProtocolParams {
        &self.params
    }

    pub fn shared(&self) -> Option<&SharedKey> {
        self.shared.as_ref()
    }

    /// `Some` once the peer's digest has arrived.
    pub fn agreed(&self) -> Option<bool> {
        self.agreed
    }

    pub fn is_done(&self) -> bool {
        self.state == AliceState::Done
    }
}

fn alice_state_name(state: AliceState) -> &'static str {
    match state {
        AliceState::Idle => "not started",
        AliceState::AwaitToken => "waiting for bob's token",
        AliceState::AwaitConfirm => "waiting for bob's digest",
        AliceState::Done => "finished",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BobState {
    AwaitHello,
    AwaitToken,
    AwaitConfirm,
    Done,
}

/// Bob's side: learns the parameters from `hello`, derives his key, and
/// answers once Alice's token has arrived.
#[derive(Debug)]
pub struct BobSession {
    seed: u64,
    state: BobState,
    params: Option<ProtocolParams>,
    party: Option<Party>,
    shared: Option<SharedKey>,
    agreed: Option<bool>,
}

impl BobSession {
    pub fn new(seed: u64) -> Self {
        BobSession {
            seed,
            state: BobState::AwaitHello,
            params: None,
            party: None,
            shared: None,
            agreed: None,
        }
    }

    pub fn receive(&mut self, msg: Message) -> Result<Vec<Message>, WireError> {
        match (self.state, msg) {
            (BobState::AwaitHello, Message::Hello { params }) => {
                self.party = Some(Party { role: Role::Bob, key: derive_key(&params, self.seed)? });
                self.params = Some(params);
                self.state = BobState::AwaitToken;
                Ok(Vec::new())
            }
            (BobState::AwaitToken, Message::Token { role: Role::Alice, word }) => {
                let party = self.party.as_ref().expect("set on hello");
                let params = self.params.as_ref().expect("set on hello");
                let token = party.token(params)?;
                self.shared = Some(party.shared(&PublicToken { u: word }));
                self.state = BobState::AwaitConfirm;
                Ok(vec![Message::Token { role: Role::Bob, word: token.u }])
            }
            (BobState::AwaitToken, Message::Token { role, .. }) => Err(WireError::WrongRole(role)),
            (BobState::AwaitConfirm, Message::Confirm { digest }) => {
                let theirs = parse_digest(&digest)?;
                let key = self.shared.as_ref().expect("set on token");
                self.agreed = Some(key.digest == theirs);
                self.state = BobState::Done;
                Ok(vec![confirm(key)])
            }
            (state, msg) => Err(WireError::Unexpected { kind: msg.kind(), state: bob_state_name(state) }),
        }
    }

    pub fn shared(&self) -> Option<&SharedKey> {
        self.shared.as_ref()
    }

    pub fn agreed(&self) -> Option<bool> {
        self.agreed
    }

    pub fn is_done(&self) -> bool {
        self.state == BobState::Done
    }
}

fn bob_state_name(state: BobState) -> &'static str {
    match state {
        BobState::AwaitHello => "waiting for hello",
        BobState::AwaitToken => "waiting for alice's token",
        BobState::AwaitConfirm => "waiting for alice's digest",
        BobState::Done => "finished",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub from: Role,
    pub msg: Message,
}

/// Every message of one exchange, in order, plus whether the keys matched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub messages: Vec<Entry>,
    #[serde(rename = "K_equal")]
    pub k_equal: bool,
}

impl Transcript {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("transcripts always serialize")
    }
}

/// Runs both parties in-process. `K_equal` compares the group elements.
pub fn demo(s: u64, m: usize, seed_alice: u64, seed_bob: u64) -> Result<Transcript, WireError> {
    let mut alice = AliceSession::from_seed(s, m, seed_alice)?;
    let mut bob = BobSession::new(seed_bob);
    let mut messages = Vec::new();
    let mut pending: Vec<Entry> =
        alice.start()?.into_iter().map(|msg| Entry { from: Role::Alice, msg }).collect();
    while !pending.is_empty() {
        let mut next = Vec::new();
        for entry in pending {
            let (to, replies) = match entry.from {
                Role::Alice => (Role::Bob, bob.receive(entry.msg.clone())?),
                Role::Bob => (Role::Alice, alice.receive(entry.msg.clone())?),
            };
            messages.push(entry);
            next.extend(replies.into_iter().map(|msg| Entry { from: to, msg }));
        }
        pending = next;
    }
    let k_equal = match (alice.shared(), bob.shared()) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    };
    Ok(Transcript { messages, k_equal })
}

struct LineChannel {
    reader: BufReader<TcpStream>,
    writer: TcpStream,
}

impl LineChannel {
    fn new(stream: TcpStream) -> std::io::Result<Self> {
        Ok(LineChannel { reader: BufReader::new(stream.try_clone()?), writer: stream })
    }

    fn send(&mut self, msg: &Message) -> Result<(), WireError> {
        let mut line = msg.to_line();
        line.push('\n');
        self.writer.write_all(line.as_bytes())?;
        self.writer.flush()?;
        Ok(())
    }

    fn recv(&mut self) -> Result<Message, WireError> {
        let mut line = String::new();
        if self.reader.read_line(&mut line)? == 0 {
            return Err(WireError::Closed);
        }
        Message::parse(&line)
    }
}

/// Plays Bob on the first connection accepted by `listener`.
pub fn serve(listener: &TcpListener, seed: u64) -> Result<Transcript, WireError> {
    let (stream, _) = listener.accept()?;
    let mut chan = LineChannel::new(stream)?;
    let mut bob = BobSession::new(seed);
    let mut messages = Vec::new();
    while !bob.is_done() {
        let msg = chan.recv()?;
        messages.push(Entry { from: Role::Alice, msg: msg.clone() });
        for reply in bob.receive(msg)? {
            chan.send(&reply)?;
            messages.push(Entry { from: Role::Bob, msg: reply });
        }
    }
    Ok(Transcript { messages, k_equal: bob.agreed() == Some(true) })
}

/// Plays Alice against a listening Bob.
pub fn connect(addr: impl ToSocketAddrs, s: u64, m: usize, seed: u64) -> Result<Transcript, WireError> {
    let mut alice = AliceSession::from_seed(s, m, seed)?;
    let mut chan = LineChannel::new(TcpStream::connect(addr)?)?;
    let mut messages = Vec::new();
    for msg in alice.start()? {
        chan.send(&msg)?;
        messages.push(Entry { from: Role::Alice, msg });
    }
    while !alice.is_done() {
        let msg = chan.recv()?;
        messages.push(Entry { from: Role::Bob, msg: msg.clone() });
        for reply in alice.receive(msg)? {
            chan.send(&reply)?;
            messages.push(Entry { from: Role::Alice, msg: reply });
        }
    }
    Ok(Transcript { messages, k_equal: alice.agreed() == Some(true) })
}
