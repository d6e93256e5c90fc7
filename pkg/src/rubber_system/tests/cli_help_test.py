import pytest

SUBCOMMANDS = ("table", "euler", "class", "chamber", "wallcross", "verify", "ratio")


def test_main_help(capsys):
    from rubbermaps.cli import main as main_cli

    with pytest.raises(SystemExit):
        main_cli(["-h"])
    doc_string = capsys.readouterr().out
    for subcommand in SUBCOMMANDS:
        assert subcommand in doc_string


def test_no_arguments_prints_help(capsys):
    import sys

    import mock

    from rubbermaps.cli import main as main_cli

    with mock.patch.object(sys, "argv", ["rubbermaps"]):
        with pytest.raises(SystemExit) as error:
            main_cli([])
    assert error.value.code == 0
    assert "usage: rubbermaps" in capsys.readouterr().out


def test_subcommand_help(capsys):
    from rubbermaps.cli import main as main_cli
    from rubbermaps.cli.utils import get_cli_class

    for subcommand in SUBCOMMANDS:
        cli_class = get_cli_class(subcommand)
        module = __import__(cli_class.__module__, fromlist=["main"])
        with pytest.raises(SystemExit):
            module.main(["--help"])
        doc_string1 = " ".join(capsys.readouterr().out.replace(" [-V]", "").split())
        with pytest.raises(SystemExit):
            main_cli([subcommand, "--help"])
        doc_string2 = " ".join(
            capsys.readouterr()
            .out.replace(f"rubbermaps {subcommand}", f"rubbermaps-{subcommand}")
            .split()
        )
        assert doc_string2 in doc_string1
        assert " ".join(cli_class.desc.split()) in doc_string1
        with pytest.raises(SystemExit):
            main_cli([subcommand[:-1]])
        assert subcommand in capsys.readouterr().err


def test_cli_classes():
    from rubbermaps.cli.utils import BaseParser, SubCommandParser, get_cli_class

    assert get_cli_class("nonsense") is None
    assert get_cli_class("utils") is None
    parsers = SubCommandParser.get_subcommand_parsers()
    assert tuple(parsers) == SUBCOMMANDS
    assert all(issubclass(cls, BaseParser) for cls in parsers.values())
    assert set(SubCommandParser.get_subcommand_help()) == set(SUBCOMMANDS)
