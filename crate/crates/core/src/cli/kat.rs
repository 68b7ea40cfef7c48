//! Known-answer files.
//!
//! Records are blocks of `name = hex` lines separated by blank lines; lines
//! starting with `#` are comments. Record `i` uses the `i`-th 40-byte block
//! squeezed from the master seed, and its encapsulation coins are squeezed
//! from that per-record seed.

use std::fmt::Write;

use crate::kem::Hqc;
use crate::sampling::{domain, xof_init, Seed, SEED_BYTES};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KatRecord {
    pub count: usize,
    pub seed: Vec<u8>,
    pub pk: Vec<u8>,
    pub sk: Vec<u8>,
    pub ct: Vec<u8>,
    pub ss: Vec<u8>,
}

fn coins_for(seed: &Seed) -> Seed {
    let bytes = xof_init(seed, domain::KAT_COINS).squeeze(SEED_BYTES);
    Seed::from_slice(&bytes).expect("40 bytes")
}

fn record(kem: &Hqc, count: usize, seed: &Seed) -> KatRecord {
    let (pk, sk) = kem.keypair_bytes(seed).expect("keygen");
    let (ct, ss) = kem.encaps_bytes(&pk, &coins_for(seed)).expect("encaps");
    KatRecord { count, seed: seed.0.to_vec(), pk, sk, ct, ss: ss.0 }
}

pub fn generate(kem: &Hqc, master: &Seed, count: usize) -> Vec<KatRecord> {
    let mut chain = xof_init(master, domain::KAT_CHAIN);
    (0..count)
        .map(|i| {
            let seed = Seed::from_slice(&chain.squeeze(SEED_BYTES)).expect("40 bytes");
            record(kem, i, &seed)
        })
        .collect()
}

/// Recomputes a record from its seed and checks decapsulation of the stored
/// ciphertext against the stored secret.
pub fn verify(kem: &Hqc, rec: &KatRecord) -> bool {
    let Ok(seed) = Seed::from_slice(&rec.seed) else {
        return false;
    };
    let fresh = record(kem, rec.count, &seed);
    let decapsulated = kem.decaps_bytes(&rec.sk, &rec.ct).map(|ss| ss.0 == rec.ss).unwrap_or(false);
    fresh == *rec && decapsulated
}

pub fn format(records: &[KatRecord]) -> String {
    let mut out = String::from("# hqc-128\n");
    for r in records {
        out.push('\n');
        let _ = writeln!(out, "count = {}", r.count);
        for (name, v) in [("seed", &r.seed), ("pk", &r.pk), ("sk", &r.sk), ("ct", &r.ct), ("ss", &r.ss)] {
            let _ = writeln!(out, "{name} = {}", hex::encode(v));
        }
    }
    out
}

pub fn parse(text: &str) -> Result<Vec<KatRecord>, String> {
    let mut records = Vec::new();
    let mut fields: Vec<(String, String)> = Vec::new();
    let mut flush = |fields: &mut Vec<(String, String)>, line: usize| -> Result<(), String> {
        if fields.is_empty() {
            return Ok(());
        }
        let get = |name: &str| {
            fields
                .iter()
                .find(|(k, _)| k == name)
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| format!("record ending at line {line}: missing `{name}`"))
        };
        let bytes = |name: &str| {
            get(name).and_then(|v| hex::decode(v).map_err(|e| format!("record ending at line {line}: `{name}`: {e}")))
        };
        let count = get("count")?
            .parse()
            .map_err(|e| format!("record ending at line {line}: `count`: {e}"))?;
        records.push(KatRecord {
            count,
            seed: bytes("seed")?,
            pk: bytes("pk")?,
            sk: bytes("sk")?,
            ct: bytes("ct")?,
            ss: bytes("ss")?,
        });
        fields.clear();
        Ok(())
    };

    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            flush(&mut fields, i)?;
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected `name = value`", i + 1))?;
        fields.push((k.trim().to_string(), v.trim().to_string()));
    }
    flush(&mut fields, text.lines().count())?;
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generate_parse_verify() {
        let kem = Hqc::hqc128();
        let recs = generate(&kem, &Seed([7; SEED_BYTES]), 3);
        assert_eq!(generate(&kem, &Seed([7; SEED_BYTES]), 3), recs);
        assert_ne!(recs[0].seed, recs[1].seed);
        let text = format(&recs);
        let back = parse(&text).unwrap();
        assert_eq!(back, recs);
        for r in &back {
            assert_eq!((r.pk.len(), r.sk.len(), r.ct.len(), r.ss.len()), (2249, 2289, 4482, 64));
            assert!(verify(&kem, r));
        }
        let mut bad = back[1].clone();
        bad.ss[0] ^= 1;
        assert!(!verify(&kem, &bad));
    }

    #[test]
    fn parse_errors() {
        assert!(parse("count = 0\nseed = 00\n").unwrap_err().contains("missing `pk`"));
        assert!(parse("count 0\n").is_err());
        assert!(parse("count = 0\nseed = zz\npk=\nsk=\nct=\nss=\n").unwrap_err().contains("seed"));
        assert_eq!(parse("# nothing\n\n").unwrap(), vec![]);
    }
}
