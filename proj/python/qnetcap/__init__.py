"""Capacity bounds and thresholds for quantum repeater networks."""

import json

from ._core import (
    DomainError,
    FamilyError,
    InputError,
    MonotonicityError,
    NotAttainable,
    NotFound,
    QnetcapError,
    ValidationError,
    ad_rci,
    ad_squashed,
    bosonic_h,
    compose_ad,
    compose_tl,
    delta,
    h2,
    max_flow,
    min_nodal_density,
    omega,
    plob_pure_loss,
    receiver_noise,
    sweep_csv,
    theta_el,
    theta_ph,
    tl_ree,
    tl_rci,
    widest_path,
)
from . import _core


def analyze(network):
    return json.loads(_core.analyze_json(json.dumps(network)))


def threshold(spec, target=None, param=None):
    return json.loads(_core.threshold_json(json.dumps(spec), target, param))


def generate(cell, radius, d, family="bosonic"):
    return json.loads(_core.generate_json(cell, radius, d, family))


def validate(network):
    return _core.validate_json(json.dumps(network))


def sweep(spec):
    return _core.sweep_csv(json.dumps(spec))
