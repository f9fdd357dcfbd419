//! Two-party session runner over a reliable byte stream.
//!
//! Wire format: each frame is a 4-byte big-endian length prefix followed
//! by that many bytes of UTF-8 JSON {"type", "sender", "body"}, with type
//! one of hello, commit, done, error. The flow is symmetric: both sides
//! send hello (schema, protocol, public data), then their commit message,
//! then a done frame carrying the derived key hex. Parameter disagreement
//! or malformed framing produces an error frame and a wire-error exit;
//! key-hex disagreement is an algebraic failure.

use std::io::{Read, Write};
use std::net::{TcpListener, TcpStream};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use braid_core::{
    aag_commit, aag_key_alice, aag_key_bob, kolee_key, kolee_message, Side, Word,
};

use crate::exit::{CliError, CliResult};
use crate::scenario::{build_instance, Instance, Scenario};

/// Upper bound on a frame body; desk-scale frames are a few KB.
pub const MAX_FRAME_BYTES: u32 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameType {
    Hello,
    Commit,
    Done,
    Error,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Frame {
    #[serde(rename = "type")]
    pub frame_type: FrameType,
    pub sender: String,
    pub body: Value,
}

pub fn write_frame(stream: &mut impl Write, frame: &Frame) -> CliResult<()> {
    let payload = serde_json::to_vec(frame)?;
    let len = u32::try_from(payload.len())
        .ok()
        .filter(|&l| l <= MAX_FRAME_BYTES)
        .ok_or_else(|| CliError::wire("frame exceeds the size limit"))?;
    stream
        .write_all(&len.to_be_bytes())
        .and_then(|_| stream.write_all(&payload))
        .map_err(|e| CliError::wire(format!("send failed: {e}")))
}

pub fn read_frame(stream: &mut impl Read) -> CliResult<Frame> {
    let mut len_bytes = [0u8; 4];
    stream
        .read_exact(&mut len_bytes)
        .map_err(|e| CliError::wire(format!("truncated frame header: {e}")))?;
    let len = u32::from_be_bytes(len_bytes);
    if len > MAX_FRAME_BYTES {
        return Err(CliError::wire(format!("frame of {len} bytes exceeds the limit")));
    }
    let mut payload = vec![0u8; len as usize];
    stream
        .read_exact(&mut payload)
        .map_err(|e| CliError::wire(format!("truncated frame payload: {e}")))?;
    serde_json::from_slice(&payload).map_err(|e| CliError::wire(format!("malformed frame: {e}")))
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct HelloBody {
    schema: u32,
    protocol: String,
    public: Value,
}

#[derive(Debug, Serialize, Deserialize)]
struct CommitBody {
    words: Vec<Word>,
}

#[derive(Debug, Serialize, Deserialize)]
struct DoneBody {
    key: String,
}

fn send_error(stream: &mut TcpStream, side: Side, message: &str) {
    let frame = Frame {
        frame_type: FrameType::Error,
        sender: side.name().into(),
        body: serde_json::json!({ "message": message }),
    };
    let _ = write_frame(stream, &frame);
}

fn expect_frame(stream: &mut TcpStream, side: Side, wanted: FrameType) -> CliResult<Frame> {
    let frame = read_frame(stream)?;
    if frame.frame_type == FrameType::Error {
        let msg = frame
            .body
            .get("message")
            .and_then(Value::as_str)
            .unwrap_or("unspecified");
        return Err(CliError::wire(format!("peer reported: {msg}")));
    }
    if frame.frame_type != wanted {
        send_error(stream, side, &format!("expected a {wanted:?} frame"));
        return Err(CliError::wire(format!(
            "expected {wanted:?}, got {:?}",
            frame.frame_type
        )));
    }
    Ok(frame)
}

/// Run one protocol side over an established stream; returns the key hex.
pub fn run_session(scenario: &Scenario, side: Side, stream: &mut TcpStream) -> CliResult<String> {
    let instance = build_instance(scenario)?;

    let (protocol_name, public_value) = match &instance {
        Instance::KoLee { public, .. } => ("kolee", serde_json::to_value(public)?),
        Instance::Aag { public, .. } => ("aag", serde_json::to_value(public)?),
    };
    let hello = HelloBody {
        schema: 1,
        protocol: protocol_name.into(),
        public: public_value,
    };
    write_frame(
        stream,
        &Frame {
            frame_type: FrameType::Hello,
            sender: side.name().into(),
            body: serde_json::to_value(&hello)?,
        },
    )?;
    let peer_hello = expect_frame(stream, side, FrameType::Hello)?;
    let peer_hello: HelloBody = serde_json::from_value(peer_hello.body)
        .map_err(|e| CliError::wire(format!("malformed hello: {e}")))?;
    if peer_hello != hello {
        send_error(stream, side, "group parameters disagree");
        return Err(CliError::wire("hello mismatch: group parameters disagree"));
    }

    let own_commit: Vec<Word> = match (&instance, side) {
        (Instance::KoLee { public, alice, .. }, Side::Alice) => {
            vec![kolee_message(public, alice, Side::Alice)?]
        }
        (Instance::KoLee { public, bob, .. }, Side::Bob) => {
            vec![kolee_message(public, bob, Side::Bob)?]
        }
        (Instance::Aag { public, alice, .. }, Side::Alice) => {
            aag_commit(public, alice, Side::Alice)?
        }
        (Instance::Aag { public, bob, .. }, Side::Bob) => aag_commit(public, bob, Side::Bob)?,
    };
    write_frame(
        stream,
        &Frame {
            frame_type: FrameType::Commit,
            sender: side.name().into(),
            body: serde_json::to_value(&CommitBody { words: own_commit })?,
        },
    )?;
    let peer_commit = expect_frame(stream, side, FrameType::Commit)?;
    let peer_commit: CommitBody = serde_json::from_value(peer_commit.body)
        .map_err(|e| CliError::wire(format!("malformed commit: {e}")))?;

    let key = match (&instance, side) {
        (Instance::KoLee { public, alice, .. }, Side::Alice) => {
            let [msg] = peer_commit.words.as_slice() else {
                send_error(stream, side, "commit must carry exactly one word");
                return Err(CliError::wire("bad commit arity"));
            };
            kolee_key(public, alice, Side::Alice, msg)?
        }
        (Instance::KoLee { public, bob, .. }, Side::Bob) => {
            let [msg] = peer_commit.words.as_slice() else {
                send_error(stream, side, "commit must carry exactly one word");
                return Err(CliError::wire("bad commit arity"));
            };
            kolee_key(public, bob, Side::Bob, msg)?
        }
        (Instance::Aag { public, alice, .. }, Side::Alice) => {
            aag_key_alice(public, alice, &peer_commit.words)?
        }
        (Instance::Aag { public, bob, .. }, Side::Bob) => {
            aag_key_bob(public, bob, &peer_commit.words)?
        }
    };
    let key_hex = key.hex();

    write_frame(
        stream,
        &Frame {
            frame_type: FrameType::Done,
            sender: side.name().into(),
            body: serde_json::to_value(&DoneBody {
                key: key_hex.clone(),
            })?,
        },
    )?;
    let peer_done = expect_frame(stream, side, FrameType::Done)?;
    let peer_done: DoneBody = serde_json::from_value(peer_done.body)
        .map_err(|e| CliError::wire(format!("malformed done: {e}")))?;
    if peer_done.key != key_hex {
        return Err(CliError::algebra("peer derived a different key"));
    }
    Ok(key_hex)
}

/// Bind (listen mode) or dial the endpoint and run the session; the bound
/// address goes to stderr so a harness can discover an ephemeral port.
pub fn run_endpoint(scenario: &Scenario, side: Side, endpoint: &str, listen: bool) -> CliResult<String> {
    let mut stream = if listen {
        let listener = TcpListener::bind(endpoint)
            .map_err(|e| CliError::wire(format!("bind {endpoint}: {e}")))?;
        let local = listener
            .local_addr()
            .map_err(|e| CliError::wire(e.to_string()))?;
        eprintln!("listening on {local}");
        let (stream, _) = listener
            .accept()
            .map_err(|e| CliError::wire(format!("accept: {e}")))?;
        stream
    } else {
        connect_with_retry(endpoint)?
    };
    stream
        .set_read_timeout(Some(Duration::from_secs(30)))
        .map_err(|e| CliError::wire(e.to_string()))?;
    run_session(scenario, side, &mut stream)
}

fn connect_with_retry(endpoint: &str) -> CliResult<TcpStream> {
    let mut last_err = None;
    for _ in 0..20 {
        match TcpStream::connect(endpoint) {
            Ok(s) => return Ok(s),
            Err(e) => {
                last_err = Some(e);
                std::thread::sleep(Duration::from_millis(100));
            }
        }
    }
    Err(CliError::wire(format!(
        "connect {endpoint}: {}",
        last_err.map(|e| e.to_string()).unwrap_or_default()
    )))
}
