"""newsaudit: measure who gets quoted as an expert in a news corpus.

The package is organised as a pipeline: ``corpus`` parses and segments
articles, ``extract`` finds quote candidates, ``entities`` attaches people
and organizations, ``orglink`` resolves organizations against gazetteers,
``stats`` provides the inequality measures and tests, and ``report`` ties
everything together behind the ``newsaudit`` command line tool.
"""

__version__ = "0.1.0"
