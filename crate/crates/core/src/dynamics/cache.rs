//! On-disk word balls. The payload is canonical JSON and carries its own
//! SHA-256; a mismatch on load means the file was altered or truncated.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::ball::{BallElement, WordBall};
use super::DynError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallRecord {
    pub word: Vec<u8>,
    /// Row-major entries.
    pub matrix: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallPayload {
    /// Caller-supplied digest of whatever produced the ball.
    pub key: String,
    pub n: usize,
    pub generator_count: usize,
    pub radius: usize,
    pub dedup_tol: f64,
    pub layer_ends: Vec<usize>,
    pub records: Vec<BallRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallCache {
    pub integrity: String,
    pub payload: BallPayload,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn digest(payload: &BallPayload) -> String {
    sha256_hex(&serde_json::to_vec(payload).expect("payload serializes"))
}

impl BallCache {
    pub fn from_ball(ball: &WordBall, key: &str) -> Self {
        let payload = BallPayload {
            key: key.to_string(),
            n: ball.n,
            generator_count: ball.generator_count,
            radius: ball.radius,
            dedup_tol: ball.dedup_tol,
            layer_ends: ball.layer_ends.clone(),
            records: ball
                .elements
                .iter()
                .map(|e| BallRecord {
                    word: e.word.clone(),
                    matrix: e.matrix.transpose().iter().copied().collect(),
                })
                .collect(),
        };
        BallCache {
            integrity: digest(&payload),
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cache serializes")
    }

    /// Parse and verify; `key` must match the one the cache was written with.
    pub fn load(text: &str, key: &str) -> Result<WordBall, DynError> {
        let cache: BallCache = serde_json::from_str(text).map_err(|e| DynError::Cache(e.to_string()))?;
        if digest(&cache.payload) != cache.integrity {
            return Err(DynError::Cache("integrity hash mismatch".into()));
        }
        let p = cache.payload;
        if p.key != key {
            return Err(DynError::Cache("cache was built from different inputs".into()));
        }
        let n = p.n;
        if p.records.iter().any(|r| r.matrix.len() != n * n) || p.layer_ends.last() != Some(&p.records.len()) {
            return Err(DynError::Cache("malformed records".into()));
        }
        Ok(WordBall {
            n,
            generator_count: p.generator_count,
            radius: p.radius,
            dedup_tol: p.dedup_tol,
            elements: p
                .records
                .into_iter()
                .map(|r| BallElement {
                    word: r.word,
                    matrix: DMatrix::from_row_slice(n, n, &r.matrix),
                })
                .collect(),
            layer_ends: p.layer_ends,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::ball::*;
    use super::*;

    #[test]
    fn round_trip_and_tamper_detection() {
        let g = GeneratorImages::from_float(vec![plane_rotation(3, 0, 1, 0.7), plane_rotation(3, 1, 2, 1.1)]);
        let ball = enumerate_ball(&g, 3, DEFAULT_DEDUP_TOL, 10_000).unwrap();
        let text = BallCache::from_ball(&ball, "k").to_json();
        let back = BallCache::load(&text, "k").unwrap();
        assert_eq!(back.len(), ball.len());
        for (a, b) in back.elements.iter().zip(&ball.elements) {
            assert_eq!(a.word, b.word);
            assert_eq!(a.matrix, b.matrix);
        }
        assert!(BallCache::load(&text, "other").is_err());
        let tampered = text.replacen("\"word\":[0]", "\"word\":[1]", 1);
        assert_ne!(tampered, text);
        assert!(matches!(BallCache::load(&tampered, "k"), Err(DynError::Cache(_))));
    }
}
