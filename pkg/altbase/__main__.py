import sys
import pathlib
import configparser

# Run the configuration script when the user runs
# python3 -m altbase [init, initialize, config, or configure]
# and the command line otherwise.

here = pathlib.Path(__file__).parent.resolve()


def _ask(question, default, cast):
    answer = input(f'{question} Press enter for the default of {default}: ')
    if answer.strip() == '':
        return default
    try:
        value = cast(answer)
    except ValueError:
        raise ValueError(f'Unknown input {answer!r}, expected a {cast.__name__}.')
    if value <= 0:
        raise ValueError(f'{answer} must be positive.')
    return value


if (len(sys.argv) > 1) and (sys.argv[1] in ['init', 'initialize', 'config', 'configure']):
    print('Running the configuration script.')
    cap = _ask('How many digit steps may an expansion take before it is truncated?', 10_000, int)
    depth = _ask('How many digits of a truncated word may comparisons use?', 200, int)
    workers = _ask('How many worker processes should gamma scans use?', 1, int)
    modulus = _ask('What is the tolerance band around the unit circle?', 1e-8, float)

    # Create a configparser object and add the user configuration.
    config = configparser.ConfigParser()
    config['Defaults'] = {'cap': cap, 'depth': depth, 'workers': workers}
    config['Tolerances'] = {'modulus': modulus}

    with open(here / 'config.ini', 'w') as f:
        config.write(f)
    print(f'Wrote {here / "config.ini"}.')

else:
    from altbase.cli import main

    sys.exit(main())
