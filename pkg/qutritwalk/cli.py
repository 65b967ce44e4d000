import os
import sys
import logging
import argparse

from .config import parse_config, parse_override
from .experiments.handler import ExperimentHandler
from .recipes import RECIPES, get_recipe
from .types import CapacityError, ConfigurationError
from .utils import default_output_dir, get_qutritwalk_version, merge_dicts


logger = logging.getLogger(__name__)


EXIT_OK = 0
EXIT_CONFIGURATION_ERROR = 1
EXIT_CAPACITY_ERROR = 2


def getArguments(argv=None):
    parser = argparse.ArgumentParser(
        prog='qutritwalk',
        description='Three-state quantum walk under decoherence.',
    )
    parser.add_argument(
        '--log-level',
        type=str,
        default='WARNING',
        choices=list(logging._nameToLevel.keys())
    )
    parser.add_argument(
        '--version',
        action='version',
        version=f'%(prog)s {get_qutritwalk_version()}',
    )

    overrides = argparse.ArgumentParser(add_help=False)
    overrides.add_argument(
        '--set',
        metavar='KEY=VALUE',
        action='append',
        default=list(),
        help='Override a config key.'
    )
    overrides.add_argument(
        '-o',
        '--output-dir',
        type=str,
        help='Output directory.'
    )

    subparsers = parser.add_subparsers(dest='command', required=True)
    run = subparsers.add_parser('run', parents=[overrides], help='Run one experiment.')
    run.add_argument('config', type=str, help='Config file.')

    sweep = subparsers.add_parser(
        'sweep',
        parents=[overrides],
        help='Run several experiments. With --output-dir each one writes into'
        ' a subdirectory named after its config file.'
    )
    sweep.add_argument('configs', type=str, nargs='+', help='Config files.')

    recipe = subparsers.add_parser('recipe', parents=[overrides], help='Run a named parameter grid.')
    recipe.add_argument('name', type=str, choices=list(RECIPES.keys()))

    return parser.parse_args(argv)


def _read(path):
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return f.read()
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigurationError(f'Cannot read config file {path}: {e}')


def _overrides(args):
    res = dict()
    for item in args.set:
        merge_dicts(res, parse_override(item))
    return res


def _with_output_dir(overrides, output_dir):
    if output_dir is None:
        return overrides
    return merge_dicts(dict(overrides), {'output_dir': output_dir})


def _subdir(args, name):
    if args.output_dir is None:
        return None
    return os.path.join(args.output_dir, name)


def _run(args, handler):
    overrides = _with_output_dir(_overrides(args), args.output_dir)
    cfg = parse_config(_read(args.config), overrides)
    handler.run_experiment(cfg)
    print(cfg.output_dir)
    return EXIT_OK


def _sweep(handler, configs, errors=()):
    reports = handler.sweep(configs)
    for cfg, report in zip(configs, reports):
        if report is not None:
            print(cfg.output_dir)

    errors = list(errors) + [e for _, e in handler.failures]
    if len(errors) == 0:
        return EXIT_OK
    if any(isinstance(e, CapacityError) for e in errors):
        return EXIT_CAPACITY_ERROR
    return EXIT_CONFIGURATION_ERROR


def _sweep_files(args, handler):
    overrides = _overrides(args)
    configs = list()
    errors = list()
    for path in args.configs:
        name = os.path.splitext(os.path.basename(path))[0]
        try:
            configs.append(parse_config(
                _read(path),
                _with_output_dir(overrides, _subdir(args, name)),
            ))
        except ConfigurationError as e:
            logger.error(f'{path}: {e}')
            print(f'Configuration error in {path}: {e}', file=sys.stderr)
            errors.append(e)
    return _sweep(handler, configs, errors)


def _recipe(args, handler):
    overrides = _overrides(args)
    # members must not share the per-model default directory
    base = args.output_dir if args.output_dir is not None else default_output_dir('recipes')
    configs = list()
    for name, keys in get_recipe(args.name):
        member = merge_dicts(dict(keys), overrides)
        configs.append(parse_config(
            '',
            _with_output_dir(member, os.path.join(base, args.name, name)),
        ))
    return _sweep(handler, configs)


COMMANDS = {
    'run': _run,
    'sweep': _sweep_files,
    'recipe': _recipe,
}


def main(argv=None):
    args = getArguments(argv)

    log_level = args.log_level.upper()
    logging.basicConfig(level=logging._nameToLevel[log_level])

    handler = ExperimentHandler()
    try:
        return COMMANDS[args.command](args, handler)
    except ConfigurationError as e:
        logger.error(str(e))
        print(f'Configuration error: {e}', file=sys.stderr)
        return EXIT_CONFIGURATION_ERROR
    except CapacityError as e:
        logger.error(str(e))
        print(f'Capacity error: {e}', file=sys.stderr)
        return EXIT_CAPACITY_ERROR


if __name__ == "__main__":
    sys.exit(main())
