//! Binary container for linear-prediction codes: the magic `GDSPLP1`, then
//! N and L as u64, B as u16, min and max as f64, the 32-byte graph
//! fingerprint, L taps as (re, im) f64 pairs and the B-bit codes packed
//! LSB-first. All integers and floats are little-endian.

use graphdsp_core::apps::{LPCode, QuantHeader, MAX_BITS};
use graphdsp_core::filtering::GraphFilter;
use graphdsp_core::graph::GraphId;
use graphdsp_core::poly::Polynomial;
use graphdsp_core::Complex64;

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 7] = b"GDSPLP1";

pub fn pack_codes(codes: &[u16], bits: u16) -> Vec<u8> {
    let mut out = vec![0u8; (codes.len() * bits as usize).div_ceil(8)];
    let mut pos = 0usize;
    for &c in codes {
        for b in 0..bits {
            if (c >> b) & 1 == 1 {
                out[pos / 8] |= 1 << (pos % 8);
            }
            pos += 1;
        }
    }
    out
}

pub fn unpack_codes(bytes: &[u8], count: usize, bits: u16) -> Vec<u16> {
    let mut pos = 0usize;
    (0..count)
        .map(|_| {
            let mut c = 0u16;
            for b in 0..bits {
                if (bytes[pos / 8] >> (pos % 8)) & 1 == 1 {
                    c |= 1 << b;
                }
                pos += 1;
            }
            c
        })
        .collect()
}

pub fn encode(code: &LPCode) -> Vec<u8> {
    let taps = code.taps.taps().coeffs();
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(code.codes.len() as u64).to_le_bytes());
    out.extend_from_slice(&(taps.len() as u64).to_le_bytes());
    out.extend_from_slice(&code.header.bits.to_le_bytes());
    out.extend_from_slice(&code.header.min.to_le_bytes());
    out.extend_from_slice(&code.header.max.to_le_bytes());
    out.extend_from_slice(&code.graph_id().0);
    for t in taps {
        out.extend_from_slice(&t.re.to_le_bytes());
        out.extend_from_slice(&t.im.to_le_bytes());
    }
    out.extend_from_slice(&pack_codes(&code.codes, code.header.bits));
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| Error::Invalid(format!("LP code truncated at byte {}", self.pos)))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }
}

pub fn decode(bytes: &[u8]) -> Result<LPCode> {
    let mut r = Reader { bytes, pos: 0 };
    if r.take(MAGIC.len())? != MAGIC {
        return Err(Error::Invalid("not an LP code (bad magic)".into()));
    }
    let n = usize::try_from(r.u64()?).map_err(|_| Error::Invalid("node count too large".into()))?;
    let l = usize::try_from(r.u64()?).map_err(|_| Error::Invalid("tap count too large".into()))?;
    let bits = u16::from_le_bytes(r.take(2)?.try_into().expect("2 bytes"));
    if !(1..=MAX_BITS).contains(&bits) {
        return Err(Error::Invalid(format!("bit depth {bits} outside 1..={MAX_BITS}")));
    }
    let (min, max) = (r.f64()?, r.f64()?);
    if !min.is_finite() || !max.is_finite() {
        return Err(Error::Invalid("quantizer range must be finite".into()));
    }
    let id = GraphId(r.take(32)?.try_into().expect("32 bytes"));
    let expected = l.checked_mul(16).ok_or_else(|| Error::Invalid("tap count too large".into()))?;
    if r.bytes.len() - r.pos < expected {
        return Err(Error::Invalid(format!("LP code truncated at byte {}", r.pos)));
    }
    let mut taps = Vec::with_capacity(l);
    for _ in 0..l {
        taps.push(Complex64::new(r.f64()?, r.f64()?));
    }
    let packed =
        r.take(n.checked_mul(bits as usize).ok_or_else(|| Error::Invalid("code too large".into()))?.div_ceil(8))?;
    if r.pos != bytes.len() {
        return Err(Error::Invalid(format!("{} trailing bytes after LP code", bytes.len() - r.pos)));
    }
    Ok(LPCode {
        taps: GraphFilter::with_id(Polynomial::with_tolerance(taps, 0.0), id),
        codes: unpack_codes(packed, n, bits),
        header: QuantHeader { min, max, bits },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_is_lsb_first() {
        assert_eq!(pack_codes(&[1, 2, 3], 2), vec![0b0011_1001]);
        assert_eq!(pack_codes(&[0x1ff], 9), vec![0xff, 0x01]);
        assert_eq!(unpack_codes(&[0b0011_1001], 3, 2), vec![1, 2, 3]);
    }

    #[test]
    fn container_round_trip() {
        let code = LPCode {
            taps: GraphFilter::with_id(
                Polynomial::with_tolerance(vec![Complex64::new(0.0, 0.0), Complex64::new(0.25, 0.0)], 0.0),
                GraphId([7; 32]),
            ),
            codes: vec![5, 0, 7, 3],
            header: QuantHeader { min: -1.5, max: 2.0, bits: 3 },
        };
        let bytes = encode(&code);
        assert_eq!(&bytes[..7], b"GDSPLP1");
        assert_eq!(bytes.len(), 7 + 8 + 8 + 2 + 16 + 32 + 32 + 2);
        assert_eq!(decode(&bytes).unwrap(), code);
        assert!(decode(&bytes[..bytes.len() - 1]).is_err());
        let mut extra = bytes.clone();
        extra.push(0);
        assert!(decode(&extra).is_err());
    }
}
