import json

import pytest

from signfree import (
    Accepted,
    CollapseCertificate,
    MalformedCertificate,
    Rejected,
    RingPresentation,
    check_collapse_certificate,
)
from signfree.certificates import ConeTerm, IdealTerm
from signfree.mpoly import MPoly

x = MPoly.var("x")


def sos_case():
    pres = RingPresentation(("x",), eq0=("1 + x^2",))
    cert = CollapseCertificate(s=(), p=(ConeTerm(1, x, ()),), z=(IdealTerm(MPoly.const(-1), 0),))
    return pres, cert


def test_trivial_certificate():
    pres = RingPresentation(("x",), gt0=("x",), eq0=("x",))
    cert = CollapseCertificate(s=(0,), z=(IdealTerm(MPoly.const(-1), 0),))
    assert isinstance(check_collapse_certificate(pres, cert), Accepted)


def test_minus_one_is_a_sum_of_squares():
    assert isinstance(check_collapse_certificate(*sos_case()), Accepted)


def test_wrong_multiplier_reports_residual():
    pres, _ = sos_case()
    cert = CollapseCertificate(p=(ConeTerm(1, x, ()),), z=(IdealTerm(MPoly.const(-2), 0),))
    r = check_collapse_certificate(pres, cert)
    assert isinstance(r, Rejected)
    assert r.residual == -(x * x) - 1


def test_out_of_range_index_is_malformed():
    pres, _ = sos_case()
    with pytest.raises(MalformedCertificate):
        check_collapse_certificate(pres, CollapseCertificate(s=(0,)))
    with pytest.raises(MalformedCertificate):
        check_collapse_certificate(pres, CollapseCertificate(z=(IdealTerm(MPoly.const(1), 3),)))


def test_nonpositive_cone_coefficient_is_malformed():
    pres, _ = sos_case()
    with pytest.raises(MalformedCertificate):
        check_collapse_certificate(pres, CollapseCertificate(p=(ConeTerm(0, x, ()),)))


def test_undeclared_generator():
    with pytest.raises(ValueError):
        RingPresentation(("x",), gt0=("y",))
    pres, _ = sos_case()
    with pytest.raises(MalformedCertificate):
        check_collapse_certificate(pres, CollapseCertificate(p=(ConeTerm(1, MPoly.var("y"), ()),)))


def test_json_round_trip():
    pres, cert = sos_case()
    pres2 = RingPresentation.from_json(json.dumps(pres.to_json()))
    cert2 = CollapseCertificate.from_json(json.dumps(cert.to_json()))
    assert pres2 == pres and cert2 == cert
    assert isinstance(check_collapse_certificate(pres2, cert2), Accepted)


def test_ordered_field_collapse():
    # x > 0, -x > 0 collapse: x * (-x) is a strict product and x^2 squares it away
    pres = RingPresentation(("x",), gt0=("x", "-x"))
    cert = CollapseCertificate(s=(0, 1), p=(ConeTerm(1, x, ()),))
    assert isinstance(check_collapse_certificate(pres, cert), Accepted)
