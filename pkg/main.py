import configparser
import logging
import sys
import time

import colorlog

LOG_FORMAT = "%(log_color)s%(asctime)s - %(levelname)s - [%(name)s] - %(message)s"
LOG_COLORS = {
    'DEBUG': 'cyan',
    'INFO': 'green',
    'WARNING': 'yellow',
    'ERROR': 'red',
    'CRITICAL': 'bold_red',
}


def log_level_from(config_file, debug=False):
    """DEBUG when forced or when [server] debug is on, INFO otherwise."""
    if debug:
        return logging.DEBUG
    config = configparser.ConfigParser()
    try:
        config.read(config_file)
        on = config.getboolean("server", "debug", fallback=False)
    except (configparser.Error, ValueError) as e:
        print(f"Warning: Could not read {config_file} for log level: {e}", file=sys.stderr)
        on = False
    return logging.DEBUG if on else logging.INFO


def setup_logger(config_file="config.ini", debug=False):
    level = log_level_from(config_file, debug)
    logger = logging.getLogger()
    logger.setLevel(level)

    # stdout is reserved for result records
    handler = colorlog.StreamHandler(sys.stderr)
    handler.set_name("console")
    handler.setLevel(level)
    handler.setFormatter(colorlog.ColoredFormatter(
        LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S", log_colors=LOG_COLORS
    ))

    for old in [h for h in logger.handlers if h.get_name() == "console"]:
        logger.removeHandler(old)
    logger.addHandler(handler)
    return logger


def run(argv=None):
    import cli

    args = cli.parse_args(argv)
    logger = setup_logger(args.config or cli.DEFAULT_CONFIG_FILE, args.debug)
    start = time.time()
    code = cli.dispatch(args)
    logger.info(f"{args.command} finished with exit code {code} in {time.time() - start:.2f}s")
    return code


if __name__ == "__main__":
    sys.exit(run())
