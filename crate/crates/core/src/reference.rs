//! Published closed forms for R(r,s,t) and S(r,s,t), used as ground truth.

use crate::expr::ZetaExpression;
use crate::reduction::Variant;

pub struct KnownValue {
    pub variant: Variant,
    pub r: i64,
    pub s: i64,
    pub t: i64,
    pub expression: &'static str,
}

const fn known(variant: Variant, r: i64, s: i64, t: i64, expression: &'static str) -> KnownValue {
    KnownValue {
        variant,
        r,
        s,
        t,
        expression,
    }
}

pub const LOW_WEIGHT: [KnownValue; 7] = [
    known(Variant::R, 1, 1, 1, "-(5/8)*zeta(3)"),
    known(Variant::R, 1, 1, 3, "(1/16)*pi^2*zeta(3) - (27/32)*zeta(5)"),
    known(Variant::R, 1, 2, 2, "(5/48)*pi^2*zeta(3) - (3/2)*zeta(5)"),
    known(Variant::R, 1, 3, 1, "(1/12)*pi^2*zeta(3) - (59/32)*zeta(5)"),
    known(
        Variant::R,
        2,
        1,
        2,
        "-(5/16)*pi^2*zeta(3) + (107/32)*zeta(5)",
    ),
    known(
        Variant::R,
        2,
        2,
        1,
        "-(5/24)*pi^2*zeta(3) + (59/32)*zeta(5)",
    ),
    known(Variant::R, 3, 1, 1, "(1/8)*pi^2*zeta(3) - (59/32)*zeta(5)"),
];

pub const HIGH_WEIGHT: [KnownValue; 5] = [
    known(
        Variant::S, 5, 5, 5,
        "(7/73728)*pi^4*zeta(11) + (35/24576)*pi^2*zeta(13) + (63/8192)*zeta(15)",
    ),
    known(
        Variant::S, 7, 7, 7,
        "(31/35389440)*pi^6*zeta(15) + (49/1966080)*pi^4*zeta(17) + (77/262144)*pi^2*zeta(19) + (429/262144)*zeta(21)",
    ),
    known(
        Variant::R, 5, 5, 5,
        "(16375/147456)*pi^4*zeta(11) + (573335/49152)*pi^2*zeta(13) - (2064195/16384)*zeta(15)",
    ),
    known(
        Variant::R, 7, 7, 7,
        "(1048543/70778880)*pi^6*zeta(15) + (7339969/3932160)*pi^4*zeta(17) + (80740121/524288)*pi^2*zeta(19) - (899676921/524288)*zeta(21)",
    ),
    known(
        Variant::R, 9, 9, 9,
        "(13421747/7046430720)*pi^8*zeta(19) + (738197141/2113929216)*pi^6*zeta(21) + (1919313253/67108864)*pi^4*zeta(23) + (143948506845/67108864)*pi^2*zeta(25) - (1631416447375/67108864)*zeta(27)",
    ),
];

impl KnownValue {
    pub fn label(&self) -> String {
        format!("{}({},{},{})", self.variant, self.r, self.s, self.t)
    }

    pub fn expression(&self) -> ZetaExpression {
        self.expression
            .parse()
            .expect("reference expressions are well formed")
    }
}

pub fn all_known_values() -> impl Iterator<Item = &'static KnownValue> {
    LOW_WEIGHT.iter().chain(HIGH_WEIGHT.iter())
}
