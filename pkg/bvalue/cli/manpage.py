"""
Renders the manual page from the argument parser.
"""
import argparse
from typing import List

from bvalue import __version__


def _escape(text: str) -> str:
    return text.replace('\\', '\\\\').replace('-', '\\-')


def _option_lines(action: argparse.Action) -> List[str]:
    if action.option_strings:
        head = ', '.join(f'\\fB{_escape(o)}\\fR' for o in action.option_strings)
    else:
        head = f'\\fI{_escape(action.metavar or action.dest)}\\fR'

    if action.option_strings and action.nargs != 0:
        if action.choices:
            head += ' ' + '|'.join(_escape(str(c)) for c in action.choices)
        elif isinstance(action.metavar, tuple):
            head += ' ' + ' '.join(f'\\fI{m}\\fR' for m in action.metavar)
        else:
            head += f' \\fI{_escape(action.metavar or action.dest.upper())}\\fR'

    return ['.TP', head, _escape(action.help or '')]


def _subcommands(parser: argparse.ArgumentParser):
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices
    return {}


def render_manpage(parser: argparse.ArgumentParser) -> str:
    """
    The manual page of ``parser`` in roff format, one subsection per subcommand.
    """
    name = parser.prog
    lines = [
        f'.TH {name.upper()} 1 "" "{name} {__version__}" "User Commands"',
        '.SH NAME',
        f'{name} \\- {_escape(parser.description or "")}',
        '.SH SYNOPSIS',
        f'.B {name}',
        '\\fICOMMAND\\fR [\\fIOPTIONS\\fR]',
        '.SH COMMANDS',
    ]

    for command, sub in _subcommands(parser).items():
        lines.append(f'.SS {command}')
        lines.append(_escape(sub.description or ''))
        for action in sub._actions:
            if isinstance(action, argparse._HelpAction):
                continue
            lines.extend(_option_lines(action))

    lines.extend([
        '.SH EXIT STATUS',
        '.TP',
        '0',
        'Success.',
        '.TP',
        '1',
        'Internal error, the traceback is logged.',
        '.TP',
        '2',
        'Invalid input: options out of range, malformed datasets or scenarios, unreadable files.',
    ])
    return '\n'.join(lines) + '\n'
