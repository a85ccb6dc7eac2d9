from __future__ import absolute_import

import math

import click

from bethe import operators
from bethe.bethe_solver import (equivariance_check, impenetrable_limit_study,
                                sigma_bounds_check, solve)
from bethe.config import JobConfig, config_from_options, job_options
from bethe.eigenfunctions import (eigen_convergence_order,
                                  phi_vanishes_on_walls, verify_eigen,
                                  verify_jumps)
from bethe.exceptions import VerificationFailedException
from bethe.root_systems import enumerate_weyl, is_regular
from bethe.utils import create_progress_bar, debug_log, make_rng, write_json


HELP = """
Run the verification suite and print a JSON report with one entry per
check: its name, the largest deviation found, the tolerance and a pass
flag.

Without a root system on the command line, the systems listed under
verify.systems in the job configuration are checked (A2 and B2 by
default):

    bethe verify
    bethe verify --type G --rank 2 --k-long 1 --k-short 2

The suite covers the integral-reflection relations, Dunkl operators and the
propagation operator; with positive multiplicities it also solves for a
weight (ρ unless --weight is given) and checks residuals, moment gaps,
equivariance, the Bethe detector, the eigen-equation, the derivative
jumps and the impenetrable limit.

The command exits with status 1 if any check fails.
"""

SHORT_HELP = "Run the numerical verification suite"

LIMIT_K = 1e6


@click.command(help=HELP, short_help=SHORT_HELP)
@job_options
@click.option('--samples', type=int,
              help='Random functions and points per check')
@click.option('--perturb', type=float, default=0.0,
              help='Shift λ by i·PERTURB·ρ before the Bethe detector check')
def cli(out, verbose, samples, perturb, **options):
    conf = config_from_options(verify_samples=samples, **options)
    verify_cmd(conf, out, perturb=perturb)


def _systems(conf):
    if conf.cartan_type is not None:
        return [conf.validate(require_weight=conf.weight is not None,
                              allow_zero_multiplicity=True)]
    systems = []
    for entry in conf.verify_systems:
        system = JobConfig()
        system.cartan_type = entry.get('type')
        system.rank = entry.get('rank')
        multiplicity = entry.get('multiplicity', {})
        system.k_long = multiplicity.get('long')
        system.k_short = multiplicity.get('short')
        system.weight = entry.get('weight')
        system.tol, system.max_iter = conf.tol, conf.max_iter
        systems.append(system.validate(
            require_weight=system.weight is not None,
            allow_zero_multiplicity=True))
    return systems


def operator_checks(rs, k, rng, samples):
    fs = [operators.random_exp_poly(rng, rs.rank) for _ in range(samples)]
    points = operators.regular_points(rs, rng, samples)
    f = fs[0]
    u, u2 = rng.normal(size=rs.rank), rng.normal(size=rs.rank)
    cross = [operators.check_cross_relation(rs, k, j, u, f, points)
             for j in range(rs.rank + 1)]
    worst = dict(max(cross, key=lambda r: r['max_deviation']))
    worst['pass'] = all(r['pass'] for r in cross)
    return [
        operators.check_quadratic_relations(rs, fs),
        operators.check_involution(rs, k, fs),
        operators.check_braid_relations(rs, k, fs),
        operators.check_wall_restriction(rs, k, fs, rng),
        operators.check_antisymmetric_kernel(rs, fs),
        operators.check_intertwiner(rs, k, fs, rng),
        worst,
        operators.check_commutativity(rs, k, u, u2, f, points),
        operators.check_intertwining(rs, k, f, u, points),
        operators.check_w0_invariant_descent(
            rs, k, f, points[:max(1, samples // 2)]),
        operators.check_jumps(rs, k, f, rng, count=2),
    ]


def _negative_control(report):
    return dict(report, name='bae_detector_negative_control',
                tolerance=1e-3, **{'pass': report['max_deviation'] > 1e-3})


def solver_checks(rs, wg, k, weight, conf, rng, samples, perturb=0.0):
    solution = solve(rs, k, weight, tol=conf.tol, max_iter=conf.max_iter,
                     wg=wg)
    rho = rs.weyl_vector
    reports = [
        {'name': 'bae_residual',
         'max_deviation': solution.bae_residual, 'tolerance': 1e-9,
         'pass': solution.bae_residual < 1e-9},
        {'name': 'bae_log_residual',
         'max_deviation': solution.log_residual, 'tolerance': 1e-10,
         'pass': solution.log_residual < 1e-10},
        {'name': 'pauli_hessian_identity',
         'max_deviation': solution.pauli['hessian_deviation'],
         'tolerance': 1e-10, 'min_eig_K': solution.pauli['min_eig_K'],
         'pass': (solution.pauli['hessian_deviation'] < 1e-10 and
                  solution.pauli['min_eig_K'] > 0)},
    ]
    if solution.gap is not None:
        reports.append({
            'name': 'moment_gaps',
            'max_deviation': max(
                [max(0.0, -b['lower_slack'], -b['upper_slack'])
                 for b in solution.gap['bounds']] or [0.0]),
            'tolerance': 0.0, 'pass': solution.gap['pass']})
    lams = [rng.uniform(0, 3, rs.rank).dot(rs.fundamental_weights)
            for _ in range(10 * samples)]
    reports.append(sigma_bounds_check(rs, k, lams))
    reports.append(equivariance_check(rs, wg, k, weight,
                                      max_iter=conf.max_iter))
    limit = impenetrable_limit_study(rs, weight, [1.0, 10.0, 100.0, LIMIT_K],
                                     max_iter=conf.max_iter)
    last = limit['rows'][-1]
    reports.append({'name': 'impenetrable_limit',
                    'max_deviation': last['max_pairing_deviation'],
                    'tolerance': last['envelope'],
                    'decreasing': limit['decreasing'],
                    'pass': last['within_envelope']})
    if not solution.regular:
        debug_log("%s weight %r is singular, skipping eigenfunction checks"
                  % (rs.name, weight))
        return reports
    lam = solution.lam + 1j * perturb * rho
    reports.append(operators.bae_detector(rs, wg, k, lam))
    reports.append(_negative_control(
        operators.bae_detector(rs, wg, k, solution.lam + 0.1j * rho)))
    points = operators.regular_points(rs, rng, samples, margin=5e-2)
    reports.append(verify_eigen(rs, wg, k, solution, points))
    reports.append(eigen_convergence_order(rs, wg, k, solution, points))
    reports.append(verify_jumps(rs, wg, k, solution, rng=rng,
                                count=samples))
    impenetrable = 2j * math.pi * solution.mu_vec
    if is_regular(rs, impenetrable):
        a = rs.simple_affine_root(0)
        wall = operators.wall_points(rs, rng, a, samples)
        reports.append(phi_vanishes_on_walls(rs, wg, impenetrable, wall))
    return reports


def verify_system(conf, samples, seed, perturb=0.0, bar=None):
    rs = conf.root_system()
    k = conf.multiplicity()
    rng = make_rng(seed)
    debug_log("Verifying %s with %r" % (rs.name, k))
    reports = operator_checks(rs, k, rng, samples)
    if not k.is_zero and min(k.values.values()) > 0:
        wg = enumerate_weyl(rs)
        weight = conf.weight or [1] * rs.rank
        reports.extend(solver_checks(rs, wg, k, weight, conf, rng, samples,
                                     perturb))
    if bar is not None:
        bar.update(1)
    return {
        'system': {'type': rs.cartan_type, 'rank': rs.rank},
        'multiplicity': dict(k.values),
        'checks': reports,
        'pass': all(bool(r['pass']) for r in reports),
    }


def verify_cmd(conf, out=None, perturb=0.0):
    systems = _systems(conf)
    samples = int(conf.verify_samples)
    bar = create_progress_bar(len(systems), 'verify')
    results = [verify_system(system, samples, conf.seed, perturb, bar)
               for system in systems]
    bar.close()
    document = {
        'seed': conf.seed,
        'samples': samples,
        'systems': results,
        'pass': all(r['pass'] for r in results),
    }
    write_json(document, out)
    if not document['pass']:
        failed = [c['name'] for r in results for c in r['checks']
                  if not c['pass']]
        raise VerificationFailedException(
            "%d check(s) failed: %s" % (len(failed), ', '.join(failed)))
    return document
