import logging
import warnings

LOGGER_NAME = "QAE"


def indent_message(msg: object) -> str:
    return "".join(["\n|\t" + line for line in str(msg).split("\n")])


class CustomFormatter(logging.Formatter):
    """Coloured log messages, indented under their header line."""

    grey = "\x1b[38;21m"
    blue = "\x1b[38;5;39m"
    yellow = "\x1b[38;5;226m"
    red = "\x1b[38;5;196m"
    bold_red = "\x1b[31;1m"
    reset = "\x1b[0m"

    def __init__(self: "CustomFormatter", fmt: str) -> None:
        super().__init__()
        self.fmt = fmt
        colours = {
            logging.DEBUG: self.grey,
            logging.INFO: self.blue,
            logging.WARNING: self.yellow,
            logging.ERROR: self.red,
            logging.CRITICAL: self.bold_red,
        }
        self.formatters = {level: logging.Formatter(colour + fmt + self.reset) for level, colour in colours.items()}

    def format(self: "CustomFormatter", record: logging.LogRecord) -> str:
        record = logging.makeLogRecord(record.__dict__)
        record.msg = indent_message(record.getMessage())
        record.args = None
        return self.formatters.get(record.levelno, self.formatters[logging.INFO]).format(record)


logger = logging.getLogger(LOGGER_NAME)
logger.setLevel(logging.INFO)
console_handler = logging.StreamHandler()
console_handler.setFormatter(CustomFormatter(fmt="%(asctime)s :: %(name)s ::  %(levelname)s ::%(message)s\n"))
logger.addHandler(console_handler)
logger.propagate = False


def _set_level(level: int) -> None:
    logging.getLogger(LOGGER_NAME).setLevel(level)


def set_critical() -> None:
    _set_level(logging.CRITICAL)
    warnings.filterwarnings("ignore")


def set_error() -> None:
    _set_level(logging.ERROR)
    warnings.filterwarnings("ignore")


def set_warning() -> None:
    _set_level(logging.WARNING)


def set_verbose() -> None:
    _set_level(logging.INFO)


def set_debug() -> None:
    _set_level(logging.DEBUG)
