import enum


class SuiteName(str, enum.Enum):
    torsion = "torsion"
    words = "words"
    sections = "sections"
    theta = "theta"
    abelianization = "abelianization"
    gamma3 = "gamma3"
    special_group = "special_group"
    transitivity = "transitivity"
    normalize = "normalize"
    branch = "branch"


class CheckStatus(str, enum.Enum):
    passed = "pass"
    failed = "fail"
    skipped = "skip"


class OutputFormat(str, enum.Enum):
    text = "text"
    machine = "machine"


class ThetaMap(str, enum.Enum):
    theta1 = "1"
    theta2 = "2"


class QuotientReport(str, enum.Enum):
    orders = "orders"
    abelianization = "abelianization"
    gamma3 = "gamma3"
    rigid = "rigid"


# Which claim each suite reproduces. Kept in step with SuiteName by a test.
CLAIM_ANCHORS: dict[SuiteName, str] = {
    SuiteName.torsion: "torsion criterion: infinite p-group iff every row sums to 0",
    SuiteName.words: "free-product normal form, length and exponent maps",
    SuiteName.sections: "section length bounds, shortening, exponent-sum identities",
    SuiteName.theta: "theta maps contract G' lengths down to 0 or 2",
    SuiteName.abelianization: "G/G' is elementary abelian of rank r+1",
    SuiteName.gamma3: "gamma_3 of the level-1 stabilizer sections onto gamma_3(G)^p",
    SuiteName.special_group: "exceptional GGS-group: |G:K| = p, |G:K'stab(n)| = p^(n+1)",
    SuiteName.transitivity: "spherical transitivity and fractality",
    SuiteName.normalize: "coordinate change to e_11 = 1 and the row-pattern conditions",
    SuiteName.branch: "gamma_3(G) inside rigid vertex stabilizers; branch index",
}
