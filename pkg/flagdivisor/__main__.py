from flagdivisor.cli import main

raise SystemExit(main())
