use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A leg label `i±`, optionally lifted with a subscript and a bar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label {
    pub index: u8,
    pub sign: Sign,
    pub sub: Option<u16>,
    pub barred: bool,
}

impl Label {
    pub fn new(index: u8, sign: Sign) -> Label {
        Label { index, sign, sub: None, barred: false }
    }

    pub fn plus(index: u8) -> Label {
        Label::new(index, Sign::Plus)
    }

    pub fn minus(index: u8) -> Label {
        Label::new(index, Sign::Minus)
    }

    pub fn lifted(index: u8, sign: Sign, sub: u16, barred: bool) -> Label {
        Label { index, sign, sub: Some(sub), barred }
    }

    /// `(i±)* = i∓`
    pub fn star(self) -> Label {
        Label { sign: self.sign.flip(), ..self }
    }

    pub fn bar(self) -> Label {
        Label { barred: !self.barred, ..self }
    }

    /// Forget subscript and bar.
    pub fn plain(self) -> Label {
        Label::new(self.index, self.sign)
    }

    pub fn is_plain(self) -> bool {
        self.sub.is_none() && !self.barred
    }

    /// All plain labels of genus `g`, in order `1+, 1-, 2+, 2-, ...`.
    pub fn all(g: u8) -> Vec<Label> {
        let mut out = Vec::with_capacity(2 * g as usize);
        for i in 1..=g {
            out.push(Label::plus(i));
            out.push(Label::minus(i));
        }
        out
    }

    /// Dense integer key, order-compatible with `Ord`.
    pub(crate) fn key(self) -> u32 {
        let sign = match self.sign {
            Sign::Plus => 0,
            Sign::Minus => 1,
        };
        let sub = self.sub.map(|s| s as u32 + 1).unwrap_or(0);
        ((self.index as u32) << 20) | (sign << 19) | (sub << 1) | self.barred as u32
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            write!(f, "~")?;
        }
        write!(f, "{}{}", self.index, self.sign.as_char())?;
        if let Some(s) = self.sub {
            write!(f, "_{}", s)?;
        }
        Ok(())
    }
}
